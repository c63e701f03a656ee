"""Truncated two-variable Fourier series with exact rational coefficients.

A :class:`ScaledSeries` represents

    sum c(n24, l2) q^(n24/24) zeta^(l2/2)  +  O(q^(prec24/24))

Exponents are stored scaled by 24 (q) and 2 (zeta) so every series in the
theory of Jacobi forms of half-integral weight and index has integer keys.

Internally the nonzero coefficients sit on a dense rectangular grid with
row step ``qs`` and column step ``ls`` (the gcd of the occupied offsets), as
integer numerators over one common denominator.  Products go through the
numba/numpy kernels in :mod:`jacring._kernels`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _kernels
from .errors import NonIntegralInput, NotDivisible, PrecisionExceeded

_EMPTY = np.zeros((0, 0), dtype=object)


def _gcd_offsets(idx) -> int:
    if len(idx) < 2:
        return 0
    return math.gcd(*(int(i - idx[0]) for i in idx[1:]))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class ScaledSeries:
    """Immutable truncated series in q^(1/24) and zeta^(1/2)."""

    __slots__ = ("_num", "_den", "_n0", "_qs", "_l0", "_ls", "_prec")

    def __init__(self, terms=None, prec24: int = 0):
        terms = dict(terms or {})
        fr = {}
        for (n24, l2), c in terms.items():
            c = _as_fraction(c)
            if c and n24 < prec24:
                fr[(int(n24), int(l2))] = c
        if not fr:
            self._set_zero(prec24)
            return
        den = math.lcm(*(c.denominator for c in fr.values()))
        ns = sorted({k[0] for k in fr})
        ls = sorted({k[1] for k in fr})
        qs, lstep = _gcd_offsets(ns), _gcd_offsets(ls)
        rows = (ns[-1] - ns[0]) // qs + 1 if qs else 1
        cols = (ls[-1] - ls[0]) // lstep + 1 if lstep else 1
        num = np.zeros((rows, cols), dtype=object)
        for (n24, l2), c in fr.items():
            i = (n24 - ns[0]) // qs if qs else 0
            j = (l2 - ls[0]) // lstep if lstep else 0
            num[i, j] = c.numerator * (den // c.denominator)
        self._assign(num, den, ns[0], qs, ls[0], lstep, prec24)

    # -- construction helpers -------------------------------------------------

    def _set_zero(self, prec24):
        self._num = _EMPTY
        self._den = 1
        self._n0 = self._qs = self._l0 = self._ls = 0
        self._prec = int(prec24)

    def _assign(self, num, den, n0, qs, l0, ls, prec):
        self._num, self._den = num, den
        self._n0, self._qs, self._l0, self._ls = n0, qs, l0, ls
        self._prec = int(prec)

    @classmethod
    def _from_grid(cls, num, den, n0, qs, l0, ls, prec) -> ScaledSeries:
        """Canonicalize a dense grid: truncate, trim, re-step, reduce."""
        out = cls.__new__(cls)
        prec = int(prec)
        if num.size and qs:
            keep = max(0, min(num.shape[0], -(-(prec - n0) // qs)))
            num = num[:keep]
        elif num.size and n0 >= prec:
            num = num[:0]
        if num.size == 0:
            out._set_zero(prec)
            return out
        mask = num != 0
        rows = np.flatnonzero(mask.any(axis=1))
        if rows.size == 0:
            out._set_zero(prec)
            return out
        cols = np.flatnonzero(mask.any(axis=0))
        gr, gc = _gcd_offsets(rows), _gcd_offsets(cols)
        num = num[rows[0] : rows[-1] + 1 : gr or 1, cols[0] : cols[-1] + 1 : gc or 1]
        n0 = n0 + qs * int(rows[0])
        l0 = l0 + ls * int(cols[0])
        qs, ls = qs * gr, ls * gc
        if den != 1:
            g = math.gcd(den, *num[num != 0])
            if g != 1:
                num = num // g
                den //= g
        out._assign(num, den, n0, qs, l0, ls, prec)
        return out

    @classmethod
    def zero(cls, prec24: int) -> ScaledSeries:
        out = cls.__new__(cls)
        out._set_zero(prec24)
        return out

    @classmethod
    def one(cls, prec24: int) -> ScaledSeries:
        return cls.monomial(0, 0, 1, prec24)

    @classmethod
    def monomial(cls, n24: int, l2: int, c, prec24: int) -> ScaledSeries:
        return cls({(n24, l2): c}, prec24)

    # -- basic accessors -------------------------------------------------------

    @property
    def prec24(self) -> int:
        return self._prec

    @property
    def is_zero(self) -> bool:
        return self._num.size == 0

    @property
    def ord24(self) -> int | None:
        """Least n24 with a nonzero coefficient; ``None`` for the zero series."""
        return None if self.is_zero else self._n0

    @property
    def _eff_ord(self) -> int:
        # a zero series is O(q^prec)
        return self._prec if self.is_zero else self._n0

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def is_integral(self) -> bool:
        return self._den == 1

    def _row_keys(self):
        r = self._num.shape[0]
        return [self._n0 + self._qs * i for i in range(r)]

    def _col_keys(self):
        c = self._num.shape[1]
        return [self._l0 + self._ls * j for j in range(c)]

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        out = {}
        if self.is_zero:
            return out
        ns, ls = self._row_keys(), self._col_keys()
        for i, j in zip(*np.nonzero(self._num != 0)):
            out[(ns[i], ls[j])] = Fraction(self._num[i, j], self._den)
        return out

    def items(self):
        return sorted(self.terms.items())

    def __len__(self):
        return 0 if self.is_zero else int(np.count_nonzero(self._num != 0))

    def coefficient(self, n24: int, l2: int) -> Fraction:
        if n24 >= self._prec:
            raise PrecisionExceeded(f"q^({n24}/24) is beyond the precision q^({self._prec}/24)")
        if self.is_zero:
            return Fraction(0)
        i, j = n24 - self._n0, l2 - self._l0
        if i < 0 or j < 0:
            return Fraction(0)
        if self._qs:
            if i % self._qs:
                return Fraction(0)
            i //= self._qs
        elif i:
            return Fraction(0)
        if self._ls:
            if j % self._ls:
                return Fraction(0)
            j //= self._ls
        elif j:
            return Fraction(0)
        if i >= self._num.shape[0] or j >= self._num.shape[1]:
            return Fraction(0)
        return Fraction(self._num[i, j], self._den)

    def row(self, n24: int) -> dict[int, Fraction]:
        """The q^(n24/24) row as ``{l2: coefficient}``."""
        if n24 >= self._prec:
            raise PrecisionExceeded(f"row {n24} is beyond the precision {self._prec}")
        if self.is_zero:
            return {}
        i = n24 - self._n0
        if i < 0 or (self._qs and i % self._qs) or (not self._qs and i):
            return {}
        i = i // self._qs if self._qs else 0
        if i >= self._num.shape[0]:
            return {}
        ls = self._col_keys()
        return {ls[j]: Fraction(c, self._den) for j, c in enumerate(self._num[i]) if c}

    def row_keys(self) -> list[int]:
        """n24 of every nonzero row, ascending."""
        if self.is_zero:
            return []
        mask = (self._num != 0).any(axis=1)
        return [n for n, m in zip(self._row_keys(), mask) if m]

    def max_abs_l2(self) -> int:
        if self.is_zero:
            return 0
        return max(abs(self._l0), abs(self._l0 + self._ls * (self._num.shape[1] - 1)))

    # -- grid plumbing -------------------------------------------------------------

    def _embed(self, n0, qs, nrows, l0, ls, ncols, scale=1):
        out = np.zeros((nrows, ncols), dtype=object)
        if self.is_zero:
            return out
        r, c = self._num.shape
        ri = (self._n0 - n0) // qs if qs else 0
        ci = (self._l0 - l0) // ls if ls else 0
        rs = self._qs // qs if qs else 0
        cs = self._ls // ls if ls else 0
        rows = ri + rs * np.arange(r)
        cols = ci + cs * np.arange(c)
        out[np.ix_(rows, cols)] = self._num * scale if scale != 1 else self._num
        return out

    # -- ring operations -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ScaledSeries):
            if isinstance(other, (int, Rational)):
                return self + ScaledSeries.monomial(0, 0, other, self._prec)
            return NotImplemented
        prec = min(self._prec, other._prec)
        if other.is_zero:
            return self.truncate(prec)
        if self.is_zero:
            return other.truncate(prec)
        a, b = self, other
        n0 = min(a._n0, b._n0)
        qs = math.gcd(a._qs, b._qs, a._n0 - b._n0)
        nend = max(a._n0 + a._qs * (a._num.shape[0] - 1), b._n0 + b._qs * (b._num.shape[0] - 1))
        l0 = min(a._l0, b._l0)
        ls = math.gcd(a._ls, b._ls, a._l0 - b._l0)
        lend = max(a._l0 + a._ls * (a._num.shape[1] - 1), b._l0 + b._ls * (b._num.shape[1] - 1))
        nrows = (nend - n0) // qs + 1 if qs else 1
        ncols = (lend - l0) // ls + 1 if ls else 1
        den = math.lcm(a._den, b._den)
        num = a._embed(n0, qs, nrows, l0, ls, ncols, den // a._den)
        num += b._embed(n0, qs, nrows, l0, ls, ncols, den // b._den)
        return ScaledSeries._from_grid(num, den, n0, qs, l0, ls, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        out = ScaledSeries.__new__(ScaledSeries)
        out._assign(-self._num, self._den, self._n0, self._qs, self._l0, self._ls, self._prec)
        return out

    def __sub__(self, other):
        if isinstance(other, (ScaledSeries, int, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> ScaledSeries:
        c = _as_fraction(c)
        if c == 0 or self.is_zero:
            return ScaledSeries.zero(self._prec)
        return ScaledSeries._from_grid(
            self._num * c.numerator, self._den * c.denominator,
            self._n0, self._qs, self._l0, self._ls, self._prec,
        )

    def __mul__(self, other):
        if isinstance(other, ScaledSeries):
            return self._mul_series(other)
        if isinstance(other, (int, Rational, np.integer)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def _mul_series(self, b: ScaledSeries) -> ScaledSeries:
        a = self
        prec = min(a._prec + b._eff_ord, b._prec + a._eff_ord)
        if a.is_zero or b.is_zero:
            return ScaledSeries.zero(prec)
        qs = math.gcd(a._qs, b._qs)
        ls = math.gcd(a._ls, b._ls)
        n0 = a._n0 + b._n0
        l0 = a._l0 + b._l0

        def regrid(s):
            r, c = s._num.shape
            nr = (r - 1) * (s._qs // qs) + 1 if qs else 1
            nc = (c - 1) * (s._ls // ls) + 1 if ls else 1
            return s._embed(s._n0, qs, nr, s._l0, ls, nc)

        A, B = regrid(a), regrid(b)
        full = A.shape[0] + B.shape[0] - 1
        if n0 >= prec:
            return ScaledSeries.zero(prec)
        nrows = min(full, -(-(prec - n0) // qs)) if qs else 1
        num = _kernels.convolve2d(A, B, nrows)
        return ScaledSeries._from_grid(num, a._den * b._den, n0, qs, l0, ls, prec)

    def __pow__(self, e: int) -> ScaledSeries:
        if not isinstance(e, (int, np.integer)) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        e = int(e)
        if e == 0:
            prec = self._prec - self._n0 if not self.is_zero else self._prec
            return ScaledSeries.one(prec)
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def exact_div(self, b: ScaledSeries) -> ScaledSeries:
        """Quotient ``c`` with ``self = b * c``, checked level by level.

        Raises :class:`NotDivisible` when some q-level leaves a nonzero Laurent
        remainder.
        """
        a = self
        if b.is_zero:
            raise ZeroDivisionError("division by the zero series")
        ob = b._n0
        if a.is_zero:
            return ScaledSeries.zero(a._prec - ob)
        oc = a._n0 - ob
        prec = min(a._prec, b._prec + oc) - ob
        g = math.gcd(a._qs, b._qs)
        gl = math.gcd(a._ls, b._ls) or 2
        if prec <= oc:
            return ScaledSeries.zero(prec)
        levels = -(-(prec - oc) // g) if g else 1

        def rows_of(s):
            step = s._qs // g if g and s._qs else 0
            out = []
            cs = s._ls // gl if s._ls else 0
            for i in range(s._num.shape[0]):
                row = s._num[i]
                if cs > 1:
                    wide = np.zeros((len(row) - 1) * cs + 1, dtype=object)
                    wide[::cs] = row
                    row = wide
                k = i * step if step else 0
                out.append((k, (s._l0, row)))
            return out

        A = dict(rows_of(a))
        brows = rows_of(b)
        B = {k: lp for k, lp in brows if k < levels}
        B0 = _lp_trim(B[0], gl)

        D = 1
        N: list[tuple[int, np.ndarray] | None] = []
        acc: dict[int, tuple[int, np.ndarray]] = {}
        for k in range(levels):
            r = A.get(k)
            r = (r[0], r[1] * D) if r is not None else None
            if k in acc:
                s = acc.pop(k)
                s = (s[0], -s[1])
                r = s if r is None else _lp_add(r, s, gl)
            if r is not None:
                r = _lp_trim(r, gl)
            if r is None or not r[1].size:
                N.append(None)
                continue
            quot, s = _lp_divexact(r, B0, gl, k)
            if s != 1:
                D *= s
                N = [None if x is None else (x[0], x[1] * s) for x in N]
                acc = {kk: (v[0], v[1] * s) for kk, v in acc.items()}
            N.append(quot)
            for j, bj in B.items():
                if j == 0 or k + j >= levels:
                    continue
                contrib = (quot[0] + bj[0], np.convolve(quot[1], bj[1]))
                acc[k + j] = contrib if (k + j) not in acc else _lp_add(acc[k + j], contrib, gl)

        present = [(k, x) for k, x in enumerate(N) if x is not None and x[1].size]
        if not present:
            return ScaledSeries.zero(prec)
        lo = min(x[0] for _, x in present)
        hi = max(x[0] + gl * (len(x[1]) - 1) for _, x in present)
        grid = np.zeros((levels, (hi - lo) // gl + 1), dtype=object)
        for k, (xlo, arr) in present:
            j0 = (xlo - lo) // gl
            grid[k, j0 : j0 + len(arr)] = arr
        num = grid * b._den
        return ScaledSeries._from_grid(num, D * a._den, oc, g, lo, gl, prec)

    def __truediv__(self, other):
        if isinstance(other, ScaledSeries):
            return self.exact_div(other)
        if isinstance(other, (int, Rational)):
            return self.scale(1 / _as_fraction(other))
        return NotImplemented

    # -- exponent maps -------------------------------------------------------------

    def dilate_z(self, d: int) -> ScaledSeries:
        """Substitute z -> d z (every l2 is multiplied by ``d``)."""
        if not isinstance(d, (int, np.integer)) or d < 1:
            raise ValueError("dilation factor must be a positive integer")
        if self.is_zero or d == 1:
            return self
        out = ScaledSeries.__new__(ScaledSeries)
        out._assign(self._num, self._den, self._n0, self._qs, self._l0 * d, self._ls * d, self._prec)
        return out

    def negate_z(self) -> ScaledSeries:
        """Substitute z -> -z."""
        if self.is_zero:
            return self
        c = self._num.shape[1]
        out = ScaledSeries.__new__(ScaledSeries)
        out._assign(
            self._num[:, ::-1].copy(), self._den, self._n0, self._qs,
            -(self._l0 + self._ls * (c - 1)), self._ls, self._prec,
        )
        return out

    def at_z0(self) -> ScaledSeries:
        """The one-variable series obtained at z = 0 (sum over each row)."""
        if self.is_zero:
            return self
        col = self._num.sum(axis=1).reshape(-1, 1)
        return ScaledSeries._from_grid(col, self._den, self._n0, self._qs, 0, 0, self._prec)

    def shift_q(self, k24: int) -> ScaledSeries:
        """Multiply by q^(k24/24)."""
        if self.is_zero:
            return ScaledSeries.zero(self._prec + k24)
        out = ScaledSeries.__new__(ScaledSeries)
        out._assign(self._num, self._den, self._n0 + k24, self._qs, self._l0, self._ls, self._prec + k24)
        return out

    def shift_z(self, k2: int) -> ScaledSeries:
        """Multiply by zeta^(k2/2)."""
        if self.is_zero:
            return self
        out = ScaledSeries.__new__(ScaledSeries)
        out._assign(self._num, self._den, self._n0, self._qs, self._l0 + k2, self._ls, self._prec)
        return out

    def truncate(self, prec24: int) -> ScaledSeries:
        if prec24 >= self._prec:
            return self
        return ScaledSeries._from_grid(
            self._num, self._den, self._n0, self._qs, self._l0, self._ls, prec24
        )

    def reduce_mod(self, modulus: int) -> ScaledSeries:
        """Coefficients reduced to residues in ``[0, modulus)``."""
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if self._den != 1:
            raise NonIntegralInput("reduce_mod needs integral coefficients")
        if self.is_zero:
            return self
        return ScaledSeries._from_grid(
            self._num % modulus, 1, self._n0, self._qs, self._l0, self._ls, self._prec
        )

    # -- comparison ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ScaledSeries):
            return NotImplemented
        if self._prec != other._prec:
            return False
        return self._same_terms(other)

    def _same_terms(self, other) -> bool:
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return (
            self._den == other._den
            and self._n0 == other._n0
            and self._l0 == other._l0
            and self._qs == other._qs
            and self._ls == other._ls
            and self._num.shape == other._num.shape
            and bool((self._num == other._num).all())
        )

    __hash__ = None

    def agrees(self, other: ScaledSeries, prec24: int | None = None) -> bool:
        """Equal on every coefficient both series know (and below ``prec24``)."""
        return self.first_difference(other, prec24) is None

    def first_difference(self, other: ScaledSeries, prec24: int | None = None):
        """First ``(n24, l2, self_coeff, other_coeff)`` where they differ, or ``None``."""
        p = min(self._prec, other._prec)
        if prec24 is not None:
            p = min(p, prec24)
        a, b = self.truncate(p), other.truncate(p)
        if a._same_terms(b):
            return None
        diff = (a - b).terms
        n24, l2 = min(diff)
        return n24, l2, a.coefficient(n24, l2), b.coefficient(n24, l2)

    # -- display / serialization -----------------------------------------------

    def __repr__(self):
        if self.is_zero:
            return f"ScaledSeries(0, prec24={self._prec})"
        return f"ScaledSeries({len(self)} terms, ord24={self._n0}, prec24={self._prec})"

    def to_json(self) -> dict:
        return {
            "prec24": self._prec,
            "terms": [[n, l, str(c)] for (n, l), c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> ScaledSeries:
        try:
            prec = data["prec24"]
            raw = data["terms"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed series payload: {exc}") from None
        if not isinstance(prec, int):
            raise ValueError("prec24 must be an integer")
        terms = {}
        for entry in raw:
            n24, l2, c = entry
            if not isinstance(n24, int) or not isinstance(l2, int):
                raise ValueError("term exponents must be integers")
            if (n24, l2) in terms:
                raise ValueError(f"duplicate term {(n24, l2)}")
            terms[(n24, l2)] = Fraction(c)
        return cls(terms, prec)


# -- Laurent polynomial helpers for exact_div -------------------------------------
#
# A Laurent polynomial is (lo, arr): arr[i] is the coefficient of zeta^((lo + gl*i)/2).


def _lp_trim(p, gl):
    lo, arr = p
    nz = np.flatnonzero(arr != 0)
    if nz.size == 0:
        return lo, arr[:0]
    return lo + gl * int(nz[0]), arr[nz[0] : nz[-1] + 1]


def _lp_add(x, y, gl):
    (xl, xa), (yl, ya) = x, y
    lo = min(xl, yl)
    hi = max(xl + gl * (len(xa) - 1), yl + gl * (len(ya) - 1))
    out = np.zeros((hi - lo) // gl + 1, dtype=object)
    i = (xl - lo) // gl
    out[i : i + len(xa)] += xa
    j = (yl - lo) // gl
    out[j : j + len(ya)] += ya
    return lo, out


def _lp_divexact(x, d, gl, level):
    """Exact quotient x/d.  Returns ((lo, numerators), s) with quotient = numerators/s."""
    (xl, xa), (dl, da) = x, d
    nd = len(da)
    nq = len(xa) - nd + 1
    if nq < 1:
        raise NotDivisible(f"nonzero Laurent remainder at q-level {level}")
    lead = int(da[-1])
    rem = xa.copy()
    quot = np.zeros(nq, dtype=object)
    unit = lead in (1, -1)
    for i in range(nq - 1, -1, -1):
        c = rem[i + nd - 1]
        if c == 0:
            continue
        qc = c * lead if unit else Fraction(c) / lead
        quot[i] = qc
        rem[i : i + nd] -= qc * da
    if (rem != 0).any():
        raise NotDivisible(f"nonzero Laurent remainder at q-level {level}")
    s = 1
    if not unit:
        s = math.lcm(*(Fraction(v).denominator for v in quot))
        quot = np.array([int(Fraction(v) * s) for v in quot], dtype=object)
    return (xl - dl, quot), s


def sigma(k: int, n: int) -> int:
    """Divisor power sum by direct enumeration."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            total += d**k
            if e != d:
                total += e**k
    return total


def sigma_sieve(k: int, nmax: int) -> list[int]:
    """``[sigma_k(0)=0, sigma_k(1), ..., sigma_k(nmax)]`` by a divisor sieve."""
    out = [0] * (nmax + 1)
    for d in range(1, nmax + 1):
        p = d**k
        for m in range(d, nmax + 1, d):
            out[m] += p
    return out
