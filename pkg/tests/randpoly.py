"""Seeded random polynomials for the round-trip and certifier tests."""

from fractions import Fraction
from functools import lru_cache

from jacring.forms import generator_degree, pole_order
from jacring.polynomial import RINGS, GeneratorPolynomial, to_base4


@lru_cache(maxsize=None)
def monomials(ring, max_index, wmin=None, wmax=None, max_poles=None):
    """Every exponent vector of ``ring`` within the given bounds, grouped by degree."""
    gens = RINGS[ring]
    deg = [tuple(int(x) for x in generator_degree(g)) for g in gens]
    poles = [pole_order(g) for g in gens]
    # weight is only bounded below through phi_m2_1, so cap the positive part
    wcap = None if wmax is None else wmax + 2 * max_index
    out = {}

    def rec(i, exps, w, m, p):
        if i == len(gens):
            if (wmin is None or w >= wmin) and (wmax is None or w <= wmax):
                out.setdefault((w, m), []).append(tuple(exps))
            return
        k, t = deg[i]
        e = 0
        while True:
            w2, m2, p2 = w + e * k, m + e * t, p + e * poles[i]
            if m2 > max_index or (max_poles is not None and p2 > max_poles):
                break
            if wcap is not None and k > 0 and w2 > wcap:
                break
            rec(i + 1, exps + [e], w2, m2, p2)
            if t == 0 and k == 0 and max_poles is None:
                break
            e += 1

    rec(0, [], 0, 0, 0)
    return {d: tuple(v) for d, v in out.items()}


def random_poly(rng, ring, groups, nterms=4, coeff=20, min_index=0):
    degs = sorted(d for d in groups if d[1] >= min_index)
    d = degs[rng.integers(len(degs))]
    monos = groups[d]
    pick = rng.choice(len(monos), size=min(nterms, len(monos)), replace=False)
    terms = {}
    for i in pick:
        c = int(rng.integers(-coeff, coeff + 1)) or 1
        terms[monos[int(i)]] = c
    return GeneratorPolynomial(ring, terms), d


def random_weak0(rng):
    return random_poly(rng, "WEAK0_4", monomials("WEAK0_4", 10))


def random_weak_even(rng):
    return random_poly(rng, "WEAK_EVEN_14", monomials("WEAK_EVEN_14", 8, -8, 16))


def random_wh0(rng):
    return random_poly(rng, "WH0_8", monomials("WH0_8", 8, max_poles=3))


def random_certifier_input(rng):
    """A rational polynomial in E4, E6, phi_0_1, phi_m2_1 of weight <= 12, index <= 8.

    Half of the draws are integral forms in disguise (an integer combination
    of the 14 generators rewritten in the four base generators); the rest are
    such forms plus a small rational multiple of a base monomial.
    """
    groups = monomials("WEAK_EVEN_14", 8, -16, 12)
    p, d = random_poly(rng, "WEAK_EVEN_14", groups, nterms=3, coeff=5)
    q = to_base4(p)
    kind = int(rng.integers(3))
    if kind == 1:
        base = [m for m in monomials("WEAK_EVEN_14", 8, -16, 12)[d]
                if all(e == 0 for g, e in zip(RINGS["WEAK_EVEN_14"], m) if g not in ("E4", "E6", "phi_0_1", "phi_m2_1"))]
        if base:
            m = base[int(rng.integers(len(base)))]
            den = int(rng.choice([2, 3, 4, 5, 7, 61]))
            q = q + GeneratorPolynomial("WEAK_EVEN_14", {m: Fraction(int(rng.integers(1, den)), den)})
    elif kind == 2:
        q = q * Fraction(1, int(rng.choice([2, 3, 12])))
    return q
