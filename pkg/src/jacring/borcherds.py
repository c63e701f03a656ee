"""Singular Fourier data of weakly holomorphic weight-0 forms and Borcherds weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import forms as FM
from .errors import IntegralityViolation, NonIntegral, NotRealizable, NotInRing, PrecisionExceeded
from .forms import JacobiForm
from .lattice import solve_integer
from .polynomial import GeneratorPolynomial, RINGS, gens
from .series import ScaledSeries, sigma


@dataclass(frozen=True)
class SingularData:
    """Coefficients f(n,l) with 4nm - l^2 < 0 in the rows n < m/4, plus the q^0 row."""

    index: int
    entries: dict  # (n, l) -> int

    def __post_init__(self):
        object.__setattr__(self, "entries", {(int(n), int(l)): int(c) for (n, l), c in self.entries.items() if c})
        for (n, l), c in self.entries.items():
            if self.entries.get((n, -l)) != c:
                raise ValueError(f"entries are not symmetric at {(n, l)}")

    @property
    def min_order(self) -> int:
        return min((n for n, _ in self.entries), default=0)

    def q0_row(self) -> dict[int, int]:
        return {l: c for (n, l), c in self.entries.items() if n == 0}

    def singular(self) -> dict[tuple[int, int], int]:
        m = self.index
        return {(n, l): c for (n, l), c in self.entries.items() if 4 * n * m - l * l < 0}

    def to_json(self) -> dict:
        return {"index": self.index, "entries": [[n, l, c] for (n, l), c in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data: dict) -> SingularData:
        return cls(int(data["index"]), {(int(n), int(l)): int(c) for n, l, c in data["entries"]})


def _check_weight0(f: JacobiForm):
    if f.weight != 0 or not f.trivial_character or f.index.denominator != 1 or f.index < 1:
        raise ValueError("expected weight 0, integral index >= 1 and trivial character")


def singular_part(f: JacobiForm) -> SingularData:
    _check_weight0(f)
    m = int(f.index)
    # rows n < m/4 hold a representative of every singular class
    top = max(0, (m - 1) // 4)
    if f.prec24 <= 24 * top:
        raise PrecisionExceeded(f"need rows up to q^{top}")
    entries = {}
    for (n24, l2), c in f.series.truncate(24 * (top + 1)).items():
        if n24 % 24 or l2 % 2:
            raise ValueError("fractional exponents in a weight-0 integral-index form")
        n, l = n24 // 24, l2 // 2
        if 4 * n * m - l * l < 0 or n == 0:
            if c.denominator != 1:
                raise NonIntegral(f"f({n},{l}) = {c}")
            entries[(n, l)] = int(c)
    return SingularData(m, entries)


def _as_data(f) -> SingularData:
    return f if isinstance(f, SingularData) else singular_part(f)


def q0_identity_residual(f) -> Fraction:
    """sum f(0,l) - (6/m) sum f(0,l) l^2 - 24 sum_{n<0} f(n,l) sigma_1(-n)."""
    d = _as_data(f)
    m = d.index
    row = d.q0_row()
    s0 = sum(row.values())
    s2 = sum(c * l * l for l, c in row.items())
    neg = sum(c * sigma(1, -n) for (n, _), c in d.entries.items() if n < 0)
    return Fraction(s0) - Fraction(6 * s2, m) - 24 * neg


def borcherds_weight(f) -> Fraction:
    """Weight of the Borcherds product: f(0,0)/2."""
    d = _as_data(f)
    return Fraction(d.entries.get((0, 0), 0), 2)


# -- the named forms psi_{0,m} -------------------------------------------------------------

def psi_poly(name: str) -> GeneratorPolynomial:
    g = gens("WH0_8")
    if name == "psi_0_1":
        return g["G4_1"] - 56 * g["phi_0_1"]
    if name == "psi_0_2":
        return g["G4_2"] - 14 * g["phi_0_1"] ** 2 + 216 * g["phi_0_2"]
    if name == "psi_0_3":
        return g["G4_3"] - 2 * g["phi_0_1"] ** 3 + 33 * g["phi_0_1"] * g["phi_0_2"] + 90 * g["phi_0_3"]
    raise KeyError(f"unknown form {name!r}")


@lru_cache(maxsize=None)
def _psi_series(name: str, prec24: int) -> ScaledSeries:
    s = psi_poly(name).expand(prec24)
    if not s.is_integral:
        raise IntegralityViolation(f"{name} is not integral")
    return s


def psi_named(name: str, prec24: int) -> JacobiForm:
    m = int(name[-1])
    return JacobiForm(_psi_series(name, prec24), 0, m, 0, 0, name)


# -- realizing prescribed singular data -----------------------------------------------------


def _wh_monomials(m: int, poles: int):
    """Exponent vectors of WH0_8 monomials of index m and pole order <= poles."""
    gens8 = RINGS["WH0_8"]
    out = []
    # index parts: phi_0_1..phi_0_4 have index 1..4, G4_1..G4_3 index 1..3
    def rec(i, left, acc):
        if i == len(gens8):
            if left == 0:
                out.append(tuple(acc))
            return
        name = gens8[i]
        if name == "j":
            for e in range(poles + 1):
                rec(i + 1, left, acc + [e])
            return
        t = int(FM.generator_degree(name)[1])
        for e in range(left // t + 1):
            rec(i + 1, left - e * t, acc + [e])

    rec(0, m, [])
    pole_idx = [k for k, g in enumerate(gens8) if FM.pole_order(g)]
    return [e for e in out if sum(e[k] for k in pole_idx) <= poles]


def realize_singular(data: SingularData) -> GeneratorPolynomial:
    """A WH0_8 polynomial whose rows n <= 0 are the given data (index <= 4)."""
    m = data.index
    if not 1 <= m <= 4:
        raise ValueError("realization is implemented for index 1..4")
    poles = max(0, -data.min_order)
    monos = _wh_monomials(m, poles)
    series = [GeneratorPolynomial("WH0_8", {e: 1}).expand(24) for e in monos]
    keys = sorted({(n24 // 24, l2 // 2) for s in series for (n24, l2), _ in s.items()} | set(data.entries))
    rows = [[int(s.coefficient(24 * n, 2 * l)) for n, l in keys] for s in series]
    target = [data.entries.get(k, 0) for k in keys]
    try:
        x = solve_integer(rows, target)
    except NotInRing as exc:
        raise NotRealizable(f"singular data not realizable: {exc}", obstruction=exc.obstruction) from exc
    return GeneratorPolynomial("WH0_8", {e: c for e, c in zip(monos, x) if c})
