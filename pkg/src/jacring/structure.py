"""Structure of the integral rings: psi-basis, integrality certificate, decompositions.

All decomposers share one pattern: read the lowest q-row of the input,
match it by an integer combination of forms with unit-triangular lowest
rows, subtract, divide (by xi_{0,6} or Delta) or lower the pole order, and
recurse.  They work on the input truncated to the rows the recursion
provably needs and finally check ``expand(result) == input`` at the input's
full precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from . import forms as FM
from .errors import (
    InsufficientData,
    NotDivisible,
    NotHomogeneous,
    NotInRing,
    NotWeak,
    StructureViolation,
)
from .forms import JacobiForm
from .lattice import hnf, solve_integer
from .polynomial import BASE4, RINGS, GeneratorPolynomial, gens
from .series import ScaledSeries

W0 = "WEAK0_4"
W14 = "WEAK_EVEN_14"
WH = "WH0_8"


# -- q^0 rows as integer vectors ----------------------------------------------------------


def row_vector(series: ScaledSeries, n24: int, m: int) -> list[int]:
    """Coefficients of zeta^m, ..., zeta^0 in the q^(n24/24) row.

    The row must be symmetric, integral and supported in |l| <= m;
    otherwise :class:`NotInRing` is raised.
    """
    row = series.row(n24)
    out = [Fraction(0)] * (m + 1)
    for l2, c in row.items():
        if l2 % 2:
            raise NotInRing("half-integral zeta exponent", obstruction=(n24 // 24, Fraction(l2, 2)))
        l = l2 // 2
        if abs(l) > m:
            raise NotInRing(
                f"zeta^{l} in row q^{n24 // 24} exceeds the index {m}",
                obstruction=(n24 // 24, l, str(c)),
            )
        if row.get(-l2, 0) != c:
            raise NotInRing("row is not symmetric in zeta", obstruction=(n24 // 24, l, str(c)))
        if c.denominator != 1:
            raise NotInRing("non-integral coefficient", obstruction=(n24 // 24, l, str(c)))
        out[m - abs(l)] = c
    return [int(c) for c in out]


def weak0_monomials(m: int) -> list[tuple[int, int, int, int]]:
    """(a,b,c,d) with a + 2b + 3c + 4d = m, in lexicographic order."""
    out = []
    for a in range(m + 1):
        for b in range((m - a) // 2 + 1):
            for c in range((m - a - 2 * b) // 3 + 1):
                rest = m - a - 2 * b - 3 * c
                if rest % 4 == 0:
                    out.append((a, b, c, rest // 4))
    return out


@lru_cache(maxsize=None)
def _phi_q0(name: str) -> ScaledSeries:
    return FM.phi(name, 24).series


@lru_cache(maxsize=None)
def _mono_q0(exps: tuple[int, int, int, int]) -> ScaledSeries:
    if not any(exps):
        return ScaledSeries.one(1)
    i = max(k for k, e in enumerate(exps) if e)
    prev = exps[:i] + (exps[i] - 1,) + exps[i + 1 :]
    return (_mono_q0(prev) * _phi_q0(RINGS[W0][i])).truncate(1)


@lru_cache(maxsize=None)
def _monomial_matrix(m: int):
    monos = weak0_monomials(m)
    return monos, [row_vector(_mono_q0(e), 0, m) for e in monos]


# -- psi-basis ------------------------------------------------------------------------------


@dataclass(frozen=True)
class PsiBasis:
    """A Z-basis of the q^0-rows of integral weak forms of weight 0 and index m."""

    index: int
    polys: tuple[GeneratorPolynomial, ...]
    q0_matrix: tuple[tuple[int, ...], ...]  # rows psi^(1..m), columns zeta^0..zeta^m
    prec24: int = 24

    @cached_property
    def forms(self) -> list[JacobiForm]:
        return [JacobiForm(p.expand(self.prec24), 0, self.index, 0, 0, f"psi_{self.index}^({i + 1})")
                for i, p in enumerate(self.polys)]


@lru_cache(maxsize=None)
def _psi_data(m: int):
    monos, rows = _monomial_matrix(m)
    H, U, pivots = hnf(rows)
    g = m // gcd(12, m)
    if pivots != list(range(m)):
        raise StructureViolation(f"pivot columns {pivots} for index {m}")
    for i in range(m - 1):
        if H[i][i] != 1:
            raise StructureViolation(f"pivot {H[i][i]} at zeta^{m - i}, expected 1")
    if H[m - 1][m - 1] != g:
        raise StructureViolation(f"pivot {H[m - 1][m - 1]} at zeta^1, expected {g}")
    vecs = [list(H[i]) for i in range(m)]
    coeffs = [list(U[i]) for i in range(m)]
    one = m - 1
    if vecs[one] != [0] * (m - 1) + [g, (12 - 2 * m) // gcd(12, m)]:
        raise StructureViolation(f"psi^(1) row {vecs[one]}")
    if m >= 2:
        two = m - 2
        k, r = divmod(-4 - vecs[two][m - 1], g)
        if r:
            raise StructureViolation("psi^(2) cannot be normalized to zeta^2 - 4 zeta + 6")
        vecs[two] = [a + k * b for a, b in zip(vecs[two], vecs[one])]
        coeffs[two] = [a + k * b for a, b in zip(coeffs[two], coeffs[one])]
        if vecs[two] != [0] * (m - 2) + [1, -4, 6]:
            raise StructureViolation(f"psi^(2) row {vecs[two]}")
    polys = []
    q0 = []
    for n in range(1, m + 1):
        i = m - n
        p = GeneratorPolynomial(W0, {e: c for e, c in zip(monos, coeffs[i]) if c})
        polys.append(p)
        q0.append(tuple(reversed(vecs[i])))
    return tuple(polys), tuple(q0)


def psi_basis(m: int, prec24: int = 24) -> PsiBasis:
    """The basis psi^(1), ..., psi^(m) with its leading q^0 structure verified."""
    if m < 1:
        raise ValueError("index must be positive")
    polys, q0 = _psi_data(m)
    return PsiBasis(m, polys, q0, prec24)


# -- integrality certificate ------------------------------------------------------------------


@dataclass
class Certificate:
    weight: int
    index: int
    checked_orders: int
    checked: list[tuple[int, int]]
    verdict: str
    witness: tuple | None = None
    assumption: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def integral(self) -> bool:
        return self.verdict == "INTEGRAL"

    def to_json(self) -> dict:
        out = {
            "weight": self.weight,
            "index": self.index,
            "checked_orders": self.checked_orders,
            "checked": [list(t) for t in self.checked],
            "verdict": self.verdict,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
        }
        if self.assumption:
            out["assumption"] = self.assumption
        out.update(self.extra)
        return out


def certify_integral(p: GeneratorPolynomial) -> Certificate:
    """Decide integrality of a rational polynomial in E4, E6, phi_0_1, phi_m2_1.

    Only the rows 0 <= n <= floor((m + k)/6) are expanded and inspected
    (weight 2k, index m).
    """
    if p.ring != W14 or not p.used() <= set(BASE4):
        raise ValueError("certify_integral expects a WEAK_EVEN_14 polynomial in E4, E6, phi_0_1, phi_m2_1")
    if p.is_zero():
        return Certificate(0, 0, -1, [], "INTEGRAL")
    if not p.is_homogeneous():
        raise NotHomogeneous(f"mixed (weight, index) degrees {sorted(p.degrees())}")
    w, t = p.degree()
    w, m = int(w), int(t)
    k = w // 2
    N = (m + k) // 6
    checked: list[tuple[int, int]] = []
    if N < 0:
        return Certificate(w, m, N, checked, "INTEGRAL")
    s = p.expand(24 * (N + 1))
    if s.ord24 is not None and s.ord24 < 0:
        raise NotWeak("expansion has negative q-powers")
    witness = None
    for n in range(N + 1):
        for l in range(-m - 2 * n * m, m + 2 * n * m + 1):
            if 4 * n * m - l * l >= -m * m:
                checked.append((n, l))
    allowed = set(checked)
    for (n24, l2), c in s.items():
        key = (n24 // 24, l2 // 2)
        if n24 % 24 or l2 % 2 or key not in allowed:
            raise NotWeak(f"coefficient at {key} is outside the support of a weak form")
        if c.denominator != 1 and witness is None:
            witness = (key[0], key[1], c)
    verdict = "INTEGRAL" if witness is None else "NOT-INTEGRAL"
    return Certificate(w, m, N, checked, verdict, witness)


# -- decomposition helpers ---------------------------------------------------------------------


def _validate(f: JacobiForm, weak: bool):
    if not f.trivial_character or not f.integral_data:
        raise NotInRing("input needs integral weight and index and trivial character")
    if weak and not f.is_weak():
        raise NotWeak("input has negative q-powers")
    if not f.series.is_integral:
        bad = next((k, c) for k, c in f.series.items() if c.denominator != 1)
        raise NotInRing("input has a non-integral coefficient", obstruction=(bad[0], str(bad[1])))


def _truncated(f: JacobiForm, rows: int) -> ScaledSeries:
    need = 24 * (rows + 1)
    if f.prec24 < need:
        raise InsufficientData(f"need q-rows 0..{rows} (prec24 >= {need}), have prec24 = {f.prec24}")
    return f.series.truncate(need)


def _check_expansion(result: GeneratorPolynomial, f: JacobiForm):
    got = result.expand(f.prec24)
    diff = got.first_difference(f.series)
    if diff is not None:
        n24, l2, a, b = diff
        raise NotInRing(
            "input is not in the ring: the decomposition of its leading rows does not reproduce it",
            obstruction=(Fraction(n24, 24), Fraction(l2, 2), str(b), str(a)),
        )


XI06_WEAK0 = GeneratorPolynomial(
    W0,
    {(2, 0, 0, 1): -1, (1, 1, 1, 0): 9, (0, 3, 0, 0): -8, (0, 0, 2, 0): -27},
)


def _weak0(series: ScaledSeries, m: int, trace: list | None) -> GeneratorPolynomial:
    result = GeneratorPolynomial(W0)
    factor = GeneratorPolynomial.const(W0, 1)
    cur, mc = series, m
    while True:
        if cur.is_zero:
            break
        if mc < 0:
            raise NotInRing("nonzero remainder of negative index", obstruction=cur.items()[:1])
        v = row_vector(cur, 0, mc)
        monos, rows = _monomial_matrix(mc)
        x = solve_integer(rows, v)
        part = GeneratorPolynomial(W0, {e: c for e, c in zip(monos, x) if c})
        result = result + part * factor
        if trace is not None:
            trace.append(("match", mc, str(part)))
        rest = cur - part.expand(cur.prec24)
        if mc < 6 or rest.prec24 <= 24:
            break
        try:
            cur = rest.exact_div(FM.phi("xi_0_6", rest.prec24).series)
        except NotDivisible as exc:
            raise NotInRing(f"remainder is not divisible by xi_0_6: {exc}") from exc
        if trace is not None:
            trace.append(("divide", "xi_0_6"))
        mc -= 6
        factor = factor * XI06_WEAK0
    return result


def decompose_weak0(f: JacobiForm, verify: bool = True, trace: list | None = None) -> GeneratorPolynomial:
    """Write an integral weak form of weight 0 as a polynomial in phi_0_1..phi_0_4."""
    _validate(f, weak=True)
    if f.weight != 0:
        raise NotInRing("weight must be 0")
    m = int(f.index)
    result = _weak0(_truncated(f, m // 6), m, trace)
    if verify:
        _check_expansion(result, f)
    return result


# -- the F-family and the even-weight ring -----------------------------------------------------


@lru_cache(maxsize=None)
def f_poly(k: int, m: int) -> GeneratorPolynomial:
    """F_{k,m} as a WEAK_EVEN_14 polynomial (even weight k >= 4)."""
    g = gens(W14)
    if m == 0:
        if k % 4 == 0:
            return g["E4"] ** (k // 4)
        return g["E4"] ** ((k - 6) // 4) * g["E6"]
    if m <= 3:
        if k == 4:
            return g[f"E4_{m}"]
        if k == 6:
            return g["F6_3"] if m == 3 else g[f"E6_{m}"]
        return f_poly(k - 4, 0) * g[f"E4_{m}"]
    return f_poly(k, m - 3) * g["phi_0_3"] - f_poly(k, m - 4) * g["phi_0_4"]


def _triangular(v: list[int], m: int) -> tuple[int, int, list[int]]:
    """Solve v = x0*[1] + x1*[zeta^{+-1} + 10] + sum x_i psi^(i) (columns zeta^m..zeta^0)."""
    resid = list(v)
    xs = [0] * (m + 1)
    if m >= 2:
        polys, q0 = _psi_data(m)
        for i in range(m, 1, -1):
            x = resid[m - i]
            if x:
                row = list(reversed(q0[i - 1]))
                resid = [a - x * b for a, b in zip(resid, row)]
            xs[i] = x
    if m >= 1:
        x1 = resid[m - 1]
        resid[m - 1] -= x1
        resid[m] -= 10 * x1
        xs[1] = x1
    return resid[m], (xs[1] if m >= 1 else 0), xs


def rows_needed(w: int, m: int) -> int:
    """Highest q-row read by :func:`decompose_weak_even` (-1 if none)."""
    if m < 0:
        return -1
    if w < 0:
        return rows_needed(0, m + w // 2)
    if w == 0:
        return m // 6
    if w == 2:
        return rows_needed(4, m - 1)
    return rows_needed(w - 12, m) + 1


def _even(series: ScaledSeries, w: int, m: int, trace: list | None) -> GeneratorPolynomial:
    g = gens(W14)
    if series.is_zero:
        return GeneratorPolynomial(W14)
    if m < 0:
        raise NotInRing("nonzero form of negative index", obstruction=series.items()[:1])
    if w < 0 or w == 2:
        e = -w // 2 if w < 0 else 1
        try:
            q = series.exact_div(FM.phi("phi_m2_1", series.prec24).series ** e)
        except NotDivisible as exc:
            raise NotInRing(f"not divisible by phi_m2_1^{e}: {exc}") from exc
        if trace is not None:
            trace.append(("divide", f"phi_m2_1^{e}"))
        inner = _even(q, w + 2 * e if w < 0 else 4, m - e, trace)
        return g["phi_m2_1"] ** e * inner
    if w == 0:
        return _weak0(series, m, trace).to_ring(W14)
    v = row_vector(series, 0, m)
    x0, x1, xs = _triangular(v, m)
    part = f_poly(w, m) * x0
    if m >= 1:
        part = part + f_poly(w, m - 1) * g["phi_0_1"] * x1
    if m >= 2:
        polys, _ = _psi_data(m)
        base = f_poly(w, 0)
        for i in range(2, m + 1):
            if xs[i]:
                part = part + base * polys[i - 1].to_ring(W14) * xs[i]
    if trace is not None:
        trace.append(("match", (w, m), str(part)))
    rest = series - part.expand(series.prec24)
    if rest.prec24 <= 24:
        if not rest.truncate(24).is_zero:
            raise NotInRing("q^0 row could not be cancelled")
        return part
    try:
        q = rest.exact_div(FM.generator("Delta", rest.prec24).series)
    except NotDivisible as exc:
        raise NotInRing(f"remainder not divisible by Delta: {exc}") from exc
    if trace is not None:
        trace.append(("divide", "Delta"))
    return part + g["Delta"] * _even(q, w - 12, m, trace)


def decompose_weak_even(f: JacobiForm, verify: bool = True, trace: list | None = None) -> GeneratorPolynomial:
    """Write an integral weak form of even weight in the 14 generators."""
    _validate(f, weak=True)
    w, m = int(f.weight), int(f.index)
    if w % 2:
        raise NotInRing("weight must be even")
    N = rows_needed(w, m)
    s = _truncated(f, max(N, 0))
    if N < 0:
        s = s.truncate(0)
    result = _even(s, w, m, trace)
    if verify:
        _check_expansion(result, f)
    return result


# -- weakly holomorphic forms of weight 0 -------------------------------------------------------


@lru_cache(maxsize=None)
def h_poly(m: int) -> GeneratorPolynomial:
    """G_{12,m}/Delta in the WH0_8 generators (j for m = 0)."""
    g = gens(WH)
    if m == 0:
        return g["j"]
    if m <= 3:
        return g[f"G4_{m}"]
    return h_poly(m - 3) * g["phi_0_3"] - h_poly(m - 4) * g["phi_0_4"]


def decompose_wh0(f: JacobiForm, verify: bool = True, trace: list | None = None) -> GeneratorPolynomial:
    """Write an integral weakly holomorphic form of weight 0 in the 8 generators.

    Reads only the pole rows and the rows n <= floor(m/6).
    """
    _validate(f, weak=False)
    if f.weight != 0:
        raise NotInRing("weight must be 0")
    m = int(f.index)
    g = gens(WH)
    o = f.series.ord24
    if o is not None and o % 24:
        raise NotInRing("q-exponents must be integral")
    n = max(0, -(o // 24)) if o is not None else 0
    cur = _truncated(f, m // 6)
    result = GeneratorPolynomial(WH)
    if m == 0:
        for k in range(n, 0, -1):
            v = row_vector(cur, -24 * k, 0)
            part = g["j"] ** k * v[0]
            result = result + part
            cur = cur - part.expand(cur.prec24)
            if trace is not None:
                trace.append(("peel", k, str(part)))
        v = row_vector(cur, 0, 0)
        result = result + v[0]
        cur = cur - v[0]
        if not cur.is_zero:
            raise NotInRing("index-0 input is not a polynomial in j")
    else:
        for k in range(n, 0, -1):
            v = row_vector(cur, -24 * k, m)
            x0, x1, xs = _triangular(v, m)
            jk = g["j"] ** (k - 1)
            part = jk * (h_poly(m) * x0 + h_poly(m - 1) * g["phi_0_1"] * x1)
            if m >= 2:
                polys, _ = _psi_data(m)
                for i in range(2, m + 1):
                    if xs[i]:
                        part = part + jk * g["j"] * polys[i - 1].to_ring(WH) * xs[i]
            cur = cur - part.expand(cur.prec24)
            if cur.row(-24 * k):
                raise StructureViolation("pole row survived the cancellation")
            result = result + part
            if trace is not None:
                trace.append(("peel", k, str(part)))
        if cur.ord24 is not None and cur.ord24 < 0:
            raise NotInRing("pole rows remain after peeling")
        result = result + _weak0(cur, m, trace).to_ring(WH)
    if verify:
        _check_expansion(result, f)
    return result
