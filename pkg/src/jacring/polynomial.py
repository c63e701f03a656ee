"""Exact polynomials in named generators and their expansion into series."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .forms import JacobiForm, generator, generator_degree, pole_order
from .series import ScaledSeries

RINGS: dict[str, tuple[str, ...]] = {
    "WEAK_EVEN_14": (
        "E4", "E6", "Delta", "E4_1", "E4_2", "E4_3", "E6_1", "E6_2", "F6_3",
        "phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4", "phi_m2_1",
    ),
    "WEAK0_4": ("phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4"),
    "WH0_8": ("j", "phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4", "G4_1", "G4_2", "G4_3"),
    "HALF_INDEX_14": (
        "E4", "E6", "Delta", "E4_1", "E4_2", "E4_3", "E6_1", "E6_2", "F6_3",
        "phi_0_1", "phi_0_2", "phi_0_3half", "phi_0_4", "phi_m1_half",
    ),
}

# the four algebraically independent generators of the even-weight ring
BASE4 = ("E4", "E6", "phi_0_1", "phi_m2_1")


class GeneratorPolynomial:
    """Polynomial with rational coefficients in the generators of one ring.

    ``terms`` maps exponent tuples (aligned with ``RINGS[ring]``) to nonzero
    :class:`~fractions.Fraction` coefficients.
    """

    __slots__ = ("ring", "gens", "_terms")

    def __init__(self, ring: str, terms: Mapping | None = None):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        self.ring = ring
        self.gens = RINGS[ring]
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = self._exps(exps)
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean

    def _exps(self, exps) -> tuple[int, ...]:
        if isinstance(exps, Mapping):
            unknown = set(exps) - set(self.gens)
            if unknown:
                raise KeyError(f"generators {sorted(unknown)} are not in ring {self.ring}")
            exps = tuple(int(exps.get(g, 0)) for g in self.gens)
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(self.gens) or min(exps, default=0) < 0:
            raise ValueError("exponent vector has the wrong length or a negative entry")
        return exps

    # -- constructors --------------------------------------------------------------

    @classmethod
    def gen(cls, ring: str, name: str) -> GeneratorPolynomial:
        return cls(ring, {_one(ring, name): 1})

    @classmethod
    def const(cls, ring: str, c) -> GeneratorPolynomial:
        return cls(ring, {(0,) * len(RINGS[ring]): c})

    @classmethod
    def monomial(cls, ring: str, exps, c=1) -> GeneratorPolynomial:
        return cls(ring, {cls(ring)._exps(exps): c})

    # -- accessors -----------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(self._exps(exps), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def used(self) -> set[str]:
        return {g for exps in self._terms for g, e in zip(self.gens, exps) if e}

    def monomial_degree(self, exps) -> tuple[Fraction, Fraction]:
        w = t = Fraction(0)
        for g, e in zip(self.gens, exps):
            if e:
                k, m = generator_degree(g)
                w += e * k
                t += e * m
        return w, t

    def degrees(self) -> set[tuple[Fraction, Fraction]]:
        return {self.monomial_degree(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> tuple[Fraction, Fraction]:
        d = self.degrees()
        if len(d) != 1:
            raise ValueError("polynomial is zero or not homogeneous")
        return next(iter(d))

    def pole_degree(self) -> int:
        return max(
            (sum(e * pole_order(g) for g, e in zip(self.gens, exps)) for exps in self._terms),
            default=0,
        )

    # -- arithmetic ----------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, GeneratorPolynomial):
            return GeneratorPolynomial.const(self.ring, other)
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GeneratorPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GeneratorPolynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GeneratorPolynomial):
            c = Fraction(other)
            return GeneratorPolynomial(self.ring, {e: c * v for e, v in self._terms.items()})
        other = self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return GeneratorPolynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = GeneratorPolynomial.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, GeneratorPolynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    __hash__ = None

    # -- change of ring ------------------------------------------------------------

    def substitute(self, values: Mapping[str, GeneratorPolynomial], ring: str) -> GeneratorPolynomial:
        """Replace each generator by a polynomial of ``ring`` (identity by name if absent)."""
        out = GeneratorPolynomial(ring)
        cache: dict[tuple[str, int], GeneratorPolynomial] = {}

        def power(g, e):
            if (g, e) not in cache:
                base = values[g] if g in values else GeneratorPolynomial.gen(ring, g)
                cache[(g, e)] = base ** e
            return cache[(g, e)]

        for exps, c in self._terms.items():
            term = GeneratorPolynomial.const(ring, c)
            for g, e in zip(self.gens, exps):
                if e:
                    term = term * power(g, e)
            out = out + term
        return out

    def to_ring(self, ring: str) -> GeneratorPolynomial:
        """The same polynomial viewed in another ring sharing the used generators."""
        return self.substitute({}, ring)

    # -- expansion -----------------------------------------------------------------

    def expand(self, prec24: int) -> ScaledSeries:
        """The series of the polynomial, exact below ``prec24``."""
        if not self._terms:
            return ScaledSeries.zero(prec24)
        work = prec24 + 24 * self.pole_degree()
        base = {g: generator(g, work).series for g in self.used()}
        memo: dict[tuple[int, ...], ScaledSeries] = {(0,) * len(self.gens): ScaledSeries.one(work)}

        def mono(exps):
            if exps in memo:
                return memo[exps]
            i = max(k for k, e in enumerate(exps) if e)
            prev = exps[:i] + (exps[i] - 1,) + exps[i + 1 :]
            memo[exps] = mono(prev) * base[self.gens[i]]
            return memo[exps]

        acc = ScaledSeries.zero(work)
        for exps, c in sorted(self._terms.items()):
            acc = acc + mono(exps).scale(c)
        if acc.prec24 < prec24:
            raise AssertionError("expansion lost precision")
        return acc.truncate(prec24)

    def expand_form(self, prec24: int, degree=None) -> JacobiForm:
        w, t = degree if degree is not None else self.degree()
        return JacobiForm(self.expand(prec24), w, t)

    # -- display / serialization -------------------------------------------------------

    def monomial_str(self, exps) -> str:
        parts = []
        for g, e in zip(self.gens, exps):
            if e == 1:
                parts.append(g)
            elif e:
                parts.append(f"{g}^{e}")
        return "*".join(parts) or "1"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for exps, c in sorted(self._terms.items(), reverse=True):
            m = self.monomial_str(exps)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = m if (a == 1 and m != "1") else (str(a) if m == "1" else f"{a}*{m}")
            out.append(f"{sign} {body}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"GeneratorPolynomial({self.ring}, {self})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "terms": [
                {"exps": {g: e for g, e in zip(self.gens, exps) if e}, "coeff": str(c)}
                for exps, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> GeneratorPolynomial:
        ring = data["ring"]
        terms = {}
        probe = cls(ring)
        for t in data["terms"]:
            exps = probe._exps(dict(t["exps"]))
            terms[exps] = terms.get(exps, Fraction(0)) + Fraction(t["coeff"])
        return cls(ring, terms)


def _one(ring: str, name: str) -> tuple[int, ...]:
    gens = RINGS[ring]
    if name not in gens:
        raise KeyError(f"generator {name!r} is not in ring {ring}")
    return tuple(1 if g == name else 0 for g in gens)


def gens(ring: str) -> dict[str, GeneratorPolynomial]:
    """Every generator of ``ring`` as a polynomial, by name."""
    return {g: GeneratorPolynomial.gen(ring, g) for g in RINGS[ring]}


def base4_substitutions() -> dict[str, GeneratorPolynomial]:
    """Rational expressions of the 14 generators in E4, E6, phi_0_1, phi_m2_1."""
    R = "WEAK_EVEN_14"
    g = gens(R)
    e4, e6, a, b = g["E4"], g["E6"], g["phi_0_1"], g["phi_m2_1"]
    s = {}
    s["Delta"] = (e4 ** 3 - e6 ** 2) * Fraction(1, 1728)
    s["phi_0_2"] = (a ** 2 - e4 * b ** 2) * Fraction(1, 24)
    s["phi_0_3"] = (a ** 3 - 3 * e4 * a * b ** 2 + 2 * e6 * b ** 3) * Fraction(1, 432)
    s["phi_0_4"] = (a * s["phi_0_3"] - s["phi_0_2"] ** 2) * Fraction(1, 4)
    s["E4_1"] = (e4 * a - e6 * b) * Fraction(1, 12)
    s["E6_1"] = (e6 * a - e4 ** 2 * b) * Fraction(1, 12)
    s["E4_2"] = (s["E4_1"] * a - e4 * s["phi_0_2"]) * Fraction(1, 6)
    s["E6_2"] = (s["E6_1"] * a - e6 * s["phi_0_2"]) * Fraction(1, 6)
    s["E4_3"] = (s["E4_1"] * s["phi_0_2"] - e4 * s["phi_0_3"]) * Fraction(1, 2)
    s["F6_3"] = (s["E6_1"] * s["phi_0_2"] - e6 * s["phi_0_3"]) * Fraction(1, 2)
    return s


def to_base4(p: GeneratorPolynomial) -> GeneratorPolynomial:
    """Rewrite a WEAK_EVEN_14 polynomial in E4, E6, phi_0_1, phi_m2_1 only."""
    if p.ring != "WEAK_EVEN_14":
        raise ValueError("to_base4 expects a WEAK_EVEN_14 polynomial")
    return p.substitute(base4_substitutions(), "WEAK_EVEN_14")
