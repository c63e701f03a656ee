"""Jacobi forms: the data model, the named generators and Hecke-type operators.

A :class:`JacobiForm` is a :class:`ScaledSeries` tagged with weight, index
and character.  The character is stored as ``char_D`` (power of the eta
multiplier, so that every q-exponent is congruent to D/24 mod 1) and
``char_H`` (the Heisenberg bit; 1 exactly when zeta-exponents are half-odd).

All generator constructors take ``prec24`` and return forms known exactly to
that precision.  Quotients are computed with some slack and truncated back.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from . import thetas as T
from .errors import (
    IntegralityViolation,
    NonUnitConstantTerm,
    NotWeak,
    UnsupportedCharacter,
)
from .series import ScaledSeries

_SLACK = 48


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class JacobiForm:
    series: ScaledSeries
    weight: Fraction
    index: Fraction
    char_D: int = 0
    char_H: int | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weight", _frac(self.weight))
        object.__setattr__(self, "index", _frac(self.index))
        object.__setattr__(self, "char_D", int(self.char_D) % 24)
        if self.weight.denominator > 2 or self.index.denominator > 2:
            raise ValueError("weight and index must be half-integers")
        if self.index < 0:
            raise ValueError("index must be nonnegative")
        if self.char_H is None:
            object.__setattr__(self, "char_H", int(2 * self.index) % 2)
        object.__setattr__(self, "char_H", int(self.char_H) % 2)

    # -- metadata ------------------------------------------------------------------

    @property
    def prec24(self) -> int:
        return self.series.prec24

    @property
    def trivial_character(self) -> bool:
        return self.char_D == 0 and self.char_H == 0

    @property
    def integral_data(self) -> bool:
        return self.weight.denominator == 1 and self.index.denominator == 1

    def _kind(self):
        return (self.weight, self.index, self.char_D, self.char_H)

    def with_series(self, series: ScaledSeries, label: str = "") -> JacobiForm:
        return JacobiForm(series, self.weight, self.index, self.char_D, self.char_H, label)

    def coefficient(self, n, l) -> Fraction:
        """f(n, l) with n, l in natural units (rationals allowed)."""
        n24, l2 = Fraction(n) * 24, Fraction(l) * 2
        if n24.denominator != 1 or l2.denominator != 1:
            return Fraction(0)
        return self.series.coefficient(int(n24), int(l2))

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, JacobiForm):
            if self._kind() != other._kind():
                raise ValueError("cannot add Jacobi forms of different weight, index or character")
            return self.with_series(self.series + other.series)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, JacobiForm):
            if self._kind() != other._kind():
                raise ValueError("cannot subtract Jacobi forms of different weight, index or character")
            return self.with_series(self.series - other.series)
        return NotImplemented

    def __neg__(self):
        return self.with_series(-self.series)

    def __mul__(self, other):
        if isinstance(other, JacobiForm):
            return JacobiForm(
                self.series * other.series,
                self.weight + other.weight,
                self.index + other.index,
                self.char_D + other.char_D,
                self.char_H ^ other.char_H,
            )
        if isinstance(other, (int, Fraction)):
            return self.with_series(self.series.scale(other))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return JacobiForm(
            self.series ** e, self.weight * e, self.index * e, self.char_D * e, self.char_H * (e % 2)
        )

    def __truediv__(self, other):
        if isinstance(other, JacobiForm):
            return JacobiForm(
                self.series.exact_div(other.series),
                self.weight - other.weight,
                self.index - other.index,
                self.char_D - other.char_D,
                self.char_H ^ other.char_H,
            )
        if isinstance(other, (int, Fraction)):
            return self.with_series(self.series.scale(Fraction(1) / other))
        return NotImplemented

    def truncate(self, prec24: int) -> JacobiForm:
        return self.with_series(self.series.truncate(prec24), self.label)

    # -- predicates ----------------------------------------------------------------

    def _discriminants(self):
        t = self.index
        for (n24, l2), _ in self.series.items():
            # 24 * (4 n t - l^2)
            yield n24, l2, 4 * n24 * t - 6 * l2 * l2

    def is_weak(self) -> bool:
        o = self.series.ord24
        return o is None or o >= 0

    def is_holomorphic(self) -> bool:
        return all(d >= 0 for _, _, d in self._discriminants())

    def is_cusp(self) -> bool:
        return all(d > 0 for _, _, d in self._discriminants())

    def support_ok(self) -> bool:
        """Every key lies on the lattice dictated by the character."""
        return all(
            (n24 - self.char_D) % 24 == 0 and (l2 - self.char_H) % 2 == 0
            for (n24, l2), _ in self.series.items()
        )

    def parity(self) -> int | None:
        """+1 if f(n,-l) = f(n,l), -1 if f(n,-l) = -f(n,l), else None."""
        s = self.series
        if s.negate_z() == s:
            return 1
        if s.negate_z() == -s:
            return -1
        return None

    def invariance_violation(self):
        """First pair of known coefficients breaking the dependence on (4nm - l^2, l mod 2m).

        Only meaningful for integral index and trivial character; returns
        ``None`` when all comparable pairs agree.
        """
        m = self.index
        if m == 0 or not self.trivial_character or m.denominator != 1:
            return None
        m = int(m)
        s = self.series
        top = s.prec24
        for (n24, l2), c in s.items():
            n, l = n24 // 24, l2 // 2
            # l' = l + 2mk gives n' = n + kl + mk^2 with the same discriminant
            for sign in (1, -1):
                k = sign
                while True:
                    n2 = n + k * l + m * k * k
                    if n2 * 24 >= top:
                        if (2 * m * k + l) * sign > 0:
                            break
                        k += sign
                        continue
                    c2 = s.coefficient(24 * n2, 2 * (l + 2 * m * k))
                    if c2 != c:
                        return (n, l), (n2, l + 2 * m * k), c, c2
                    k += sign
        return None

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        out = self.series.to_json()
        out.update(
            weight=str(self.weight), index=str(self.index), char_D=self.char_D, char_H=self.char_H
        )
        return out

    @classmethod
    def from_json(cls, data: dict) -> JacobiForm:
        series = ScaledSeries.from_json(data)
        return cls(
            series,
            Fraction(data["weight"]),
            Fraction(data["index"]),
            int(data.get("char_D", 0)),
            data.get("char_H"),
        )

    def __repr__(self):
        name = self.label or "JacobiForm"
        return f"{name}(weight={self.weight}, index={self.index}, {self.series!r})"


def _fit(series: ScaledSeries, prec24: int) -> ScaledSeries:
    if series.prec24 < prec24:
        raise AssertionError(f"internal precision loss: {series.prec24} < {prec24}")
    return series.truncate(prec24)


def _integral(series: ScaledSeries, name: str) -> ScaledSeries:
    if not series.is_integral:
        bad = next((k, c) for k, c in series.items() if c.denominator != 1)
        raise IntegralityViolation(f"{name} has non-integral coefficient {bad[1]} at {bad[0]}")
    return series


def modular(series: ScaledSeries, weight, label: str = "") -> JacobiForm:
    """Wrap a one-variable series as a Jacobi form of index 0."""
    return JacobiForm(series, weight, 0, 0, 0, label)


# -- the basic generators --------------------------------------------------------------

# name -> (weight, index)
PHI_DATA = {
    "phi_m2_1": (-2, 1),
    "phi_0_1": (0, 1),
    "phi_0_2": (0, 2),
    "phi_0_3": (0, 3),
    "phi_0_4": (0, 4),
    "xi_0_6": (0, 6),
    "phi_m1_2": (-1, 2),
    "phi_0_3half": (0, Fraction(3, 2)),
    "phi_m1_half": (-1, Fraction(1, 2)),
}


@lru_cache(maxsize=None)
def _phi_series(name: str, prec24: int) -> ScaledSeries:
    w = prec24 + _SLACK
    th = T.theta(w).series
    if name == "phi_m2_1":
        s = (th ** 2).exact_div(T.eta(w).series ** 6)
    elif name == "phi_0_1":
        xi = [T.xi_ab(ab, prec24).series for ab in ("00", "01", "10")]
        s = (xi[0] ** 2 + xi[1] ** 2 + xi[2] ** 2).scale(4)
    elif name == "phi_0_2":
        xi = [T.xi_ab(ab, prec24).series for ab in ("00", "01", "10")]
        s = (xi[0] + xi[1] + xi[2]).scale(2).dilate_z(2)
    elif name == "phi_0_3":
        s = (th.dilate_z(2) ** 2).exact_div(th ** 2)
    elif name == "phi_0_4":
        s = th.dilate_z(3).exact_div(th)
    elif name == "xi_0_6":
        s = (th ** 12).exact_div(T.eta(w).series ** 12)
    elif name == "phi_m1_2":
        s = th.dilate_z(2).exact_div(T.eta(w).series ** 3)
    elif name == "phi_0_3half":
        s = th.dilate_z(2).exact_div(th)
    elif name == "phi_m1_half":
        s = th.exact_div(T.eta(w).series ** 3)
    else:
        raise KeyError(name)
    return _integral(_fit(s, prec24), name)


def phi(name: str, prec24: int) -> JacobiForm:
    """One of the theta-quotient generators listed in :data:`PHI_DATA`."""
    if name not in PHI_DATA:
        raise KeyError(f"unknown generator {name!r}")
    k, t = PHI_DATA[name]
    return JacobiForm(_phi_series(name, prec24), k, t, 0, None, name)


# -- Jacobi-Eisenstein series --------------------------------------------------------


def _unit_constant(series: ScaledSeries, name: str) -> ScaledSeries:
    row = series.row(0)
    if row != {0: 1}:
        raise NonUnitConstantTerm(f"{name} has q^0-term {row}")
    return series


@lru_cache(maxsize=None)
def _eis_series(k: int, m: int, prec24: int) -> ScaledSeries:
    e4, e6 = T.eisenstein(4, prec24), T.eisenstein(6, prec24)
    p01, pm2 = _phi_series("phi_0_1", prec24), _phi_series("phi_m2_1", prec24)
    p02, p03 = _phi_series("phi_0_2", prec24), _phi_series("phi_0_3", prec24)
    if (k, m) == (4, 1):
        s, d = e4 * p01 - e6 * pm2, 12
    elif (k, m) == (6, 1):
        s, d = e6 * p01 - e4 * e4 * pm2, 12
    elif (k, m) == (4, 2):
        s, d = _eis_series(4, 1, prec24) * p01 - e4 * p02, 6
    elif (k, m) == (6, 2):
        s, d = _eis_series(6, 1, prec24) * p01 - e6 * p02, 6
    elif (k, m) == (4, 3):
        s, d = _eis_series(4, 1, prec24) * p02 - e4 * p03, 2
    elif (k, m) == (6, 3):
        s, d = _eis_series(6, 1, prec24) * p02 - e6 * p03, 2
    else:
        raise ValueError(f"no Jacobi-Eisenstein generator of weight {k}, index {m}")
    name = f"E{k}_{m}" if (k, m) != (6, 3) else "F6_3"
    s = _integral(s.scale(Fraction(1, d)), name)
    return _unit_constant(s, name)


def jacobi_eisenstein(k: int, m: int, prec24: int) -> JacobiForm:
    """E_{k,m} for k in {4, 6}, m in {1, 2, 3}; (6, 3) gives F_{6,3}."""
    name = f"E{k}_{m}" if (k, m) != (6, 3) else "F6_3"
    return JacobiForm(_eis_series(k, m, prec24), k, m, 0, 0, name)


@lru_cache(maxsize=None)
def _e63_prime_series(prec24: int) -> ScaledSeries:
    a = T.theta_constant("01", prec24).series * T.theta_ab("01", prec24).series
    b = T.theta_constant("10", prec24).series * T.theta_ab("10", prec24).series
    a2, b2 = a * a, b * b
    s = (
        a2 ** 3
        + (a2 * a2 * b2).scale(Fraction(3, 2))
        - (a2 * b2 * b2).scale(Fraction(3, 2))
        - b2 ** 3
    )
    return _integral(_fit(s, prec24), "E6_3'")


def e63_prime(prec24: int) -> JacobiForm:
    """The integral weight-6 index-3 form built from theta constants."""
    return JacobiForm(_e63_prime_series(prec24), 6, 3, 0, 0, "E6_3'")


def e63(prec24: int) -> JacobiForm:
    """E_{6,3} = E'_{6,3} - (22/61) Delta phi_{-2,1}^3 (not integral)."""
    corr = T.delta(prec24).series * _phi_series("phi_m2_1", prec24) ** 3
    return JacobiForm(_e63_prime_series(prec24) - corr.scale(Fraction(22, 61)), 6, 3, 0, 0, "E6_3")


# -- the F-family ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _f_series(k: int, m: int, prec24: int) -> ScaledSeries:
    e4, e6 = T.eisenstein(4, prec24), T.eisenstein(6, prec24)
    if m == 0:
        if k % 4 == 0:
            return e4 ** (k // 4)
        return e4 ** ((k - 6) // 4) * e6
    if m <= 3:
        if k in (4, 6):
            return _eis_series(k, m, prec24)
        return _f_series(k - 4, 0, prec24) * _eis_series(4, m, prec24)
    return (
        _f_series(k, m - 3, prec24) * _phi_series("phi_0_3", prec24)
        - _f_series(k, m - 4, prec24) * _phi_series("phi_0_4", prec24)
    )


def f_family(k: int, m: int, prec24: int) -> JacobiForm:
    """The integral weak form F_{k,m} = 1 + O(q) of even weight k >= 4."""
    if k < 4 or k % 2 or m < 0:
        raise ValueError("f_family needs even weight >= 4 and index >= 0")
    return JacobiForm(_f_series(k, m, prec24), k, m, 0, 0, f"F{k}_{m}")


# -- E8 lattice oracle -----------------------------------------------------------------


def e8_vector(norm: int) -> tuple[int, ...]:
    """Lexicographically first E8 vector of the given norm, doubled coordinates."""
    target = 4 * norm  # |y|^2 with y = 2v

    def search(prefix, rest, parity):
        d = len(prefix)
        if d == 8:
            return prefix if rest == 0 and sum(prefix) % 4 == 0 else None
        r = int(rest ** 0.5) + 1
        for y in range(-r, r + 1):
            if (y - parity) % 2 or y * y > rest:
                continue
            # remaining coordinates must be able to absorb what is left
            tail = rest - y * y
            if parity and tail < (7 - d):
                continue
            hit = search(prefix + (y,), tail, parity)
            if hit:
                return hit
        return None

    cands = [c for c in (search((), target, 0), search((), target, 1)) if c]
    return min(cands)


@lru_cache(maxsize=None)
def _e8_series(m: int, prec24: int) -> ScaledSeries:
    nmax = (prec24 - 1) // 24
    z = np.array(e8_vector(2 * m), dtype=np.int64)
    hist, lmax = _kernels.e8_histogram(nmax, z)
    terms = {}
    for n, c in zip(*np.nonzero(hist)):
        terms[(24 * int(n), int(c) - lmax)] = int(hist[n, c])
    return ScaledSeries(terms, prec24)


def theta_E8_specialize(m: int, prec24: int) -> JacobiForm:
    """Theta series of E8 restricted to the line z * v_m, (v_m, v_m) = 2m."""
    if m not in (1, 2, 3):
        raise ValueError("m must be 1, 2 or 3")
    return JacobiForm(_e8_series(m, prec24), 4, m, 0, 0, f"thetaE8_{m}")


# -- Hecke-type operators -------------------------------------------------------------


def _require_plain(f: JacobiForm, op: str):
    if not f.trivial_character or not f.integral_data:
        raise UnsupportedCharacter(f"{op} needs integral weight and index and trivial character")


def hecke_U(f: JacobiForm, d: int) -> JacobiForm:
    """U_d: z -> d z, index multiplied by d^2."""
    _require_plain(f, "U_d")
    if d < 1:
        raise ValueError("d must be positive")
    return JacobiForm(f.series.dilate_z(d), f.weight, f.index * d * d, 0, 0)


def hecke_V(f: JacobiForm, d: int) -> JacobiForm:
    """V_d: c(n,l) -> sum_{a | (n,l,d)} a^(k-1) c(nd/a^2, l/a), index multiplied by d."""
    _require_plain(f, "V_d")
    if d < 1:
        raise ValueError("d must be positive")
    if not f.is_weak():
        raise NotWeak("V_d is implemented for weak forms only")
    if d == 1:
        return f
    k = int(f.weight)
    rows = -(-f.prec24 // 24)
    out_rows = rows // d
    src = f.series
    divs = [a for a in range(1, d + 1) if d % a == 0]
    lmax = src.max_abs_l2() // 2 if not src.is_zero else 0
    terms = {}
    for n in range(out_rows):
        # |l| for the a = 1 term is bounded by the width of row n*d
        for l in range(-lmax * d - 1, lmax * d + 2):
            acc = Fraction(0)
            for a in divs:
                if n % a or l % a:
                    continue
                w = Fraction(a) ** (k - 1)
                acc += w * src.coefficient(24 * (n * d // (a * a)), 2 * (l // a))
            if acc:
                terms[(24 * n, 2 * l)] = acc
    return JacobiForm(ScaledSeries(terms, 24 * out_rows), f.weight, f.index * d, 0, 0)


# -- the generator registry --------------------------------------------------------------

GENERATORS = (
    "E4", "E6", "Delta", "E4_1", "E4_2", "E4_3", "E6_1", "E6_2", "F6_3",
    "phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4", "phi_m2_1",
    "phi_0_3half", "phi_m1_half", "phi_m1_2", "j", "G4_1", "G4_2", "G4_3",
)


@lru_cache(maxsize=None)
def _g_series(m: int, prec24: int) -> ScaledSeries:
    w = prec24 + _SLACK
    e4 = T.eisenstein(4, w)
    s = (e4 * e4 * _eis_series(4, m, w)).exact_div(T.delta(w).series)
    return _integral(_fit(s, prec24), f"G4_{m}")


def generator(name: str, prec24: int) -> JacobiForm:
    """Any named generator of the rings handled by the package."""
    if name == "E4":
        return modular(T.eisenstein(4, prec24), 4, name)
    if name == "E6":
        return modular(T.eisenstein(6, prec24), 6, name)
    if name == "Delta":
        return modular(T.delta(prec24).series, 12, name)
    if name == "j":
        return modular(T.j_invariant(max(prec24, 48)).series.truncate(prec24), 0, name)
    if name in PHI_DATA:
        return phi(name, prec24)
    if name.startswith("G4_") and name[3:] in ("1", "2", "3"):
        m = int(name[3:])
        return JacobiForm(_g_series(m, prec24), 0, m, 0, 0, name)
    if name == "F6_3":
        return jacobi_eisenstein(6, 3, prec24)
    if name in ("E4_1", "E4_2", "E4_3", "E6_1", "E6_2"):
        return jacobi_eisenstein(int(name[1]), int(name[3]), prec24)
    raise KeyError(f"unknown generator {name!r}")


def generator_degree(name: str) -> tuple[Fraction, Fraction]:
    """(weight, index) of a named generator."""
    table = {
        "E4": (4, 0), "E6": (6, 0), "Delta": (12, 0), "j": (0, 0),
        "E4_1": (4, 1), "E4_2": (4, 2), "E4_3": (4, 3),
        "E6_1": (6, 1), "E6_2": (6, 2), "F6_3": (6, 3),
        "G4_1": (0, 1), "G4_2": (0, 2), "G4_3": (0, 3),
    }
    if name in PHI_DATA:
        k, t = PHI_DATA[name]
    elif name in table:
        k, t = table[name]
    else:
        raise KeyError(f"unknown generator {name!r}")
    return Fraction(k), Fraction(t)


def pole_order(name: str) -> int:
    """Integer orders of pole at q = 0 (1 for j and the G4_m quotients)."""
    return 1 if name == "j" or name.startswith("G4_") else 0
