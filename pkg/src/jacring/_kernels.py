"""Hot numeric kernels: exact 2-D convolution and E8 lattice enumeration.

Every kernel has a numba implementation and a pure-numpy fallback with the
same contract.  The active backend is chosen once at import from the
``JACRING_BACKEND`` environment variable (``numba`` or ``numpy``); numba is
the default when it imports cleanly.  :func:`use_backend` switches at runtime
(tests and the benchmark compare both).

Coefficients are arbitrary-precision integers.  Convolution is done either
directly in int64 (when a coefficient bound proves there is no overflow) or
modulo a set of primes below 2**25 followed by CRT reconstruction.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_requested = os.environ.get("JACRING_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"JACRING_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = "numba" if (_requested == "numba" and HAVE_NUMBA) else "numpy"

# residues < 2**25 so a product is < 2**50 and up to 2**12 of them fit in int64
_PRIME_BITS = 25
_MAX_WIDTH = 4096
_DIRECT_LIMIT = 1 << 62


def backend() -> str:
    return BACKEND


@contextmanager
def use_backend(name: str):
    """Temporarily select ``"numba"`` or ``"numpy"`` kernels."""
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    old = BACKEND
    BACKEND = name
    try:
        yield
    finally:
        BACKEND = old


# ---------------------------------------------------------------------------
# primes for the multi-modular path


def _small_primes(limit: int) -> list[int]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(p) for p in np.flatnonzero(sieve)]


_TRIAL = _small_primes(1 << ((_PRIME_BITS + 1) // 2 + 1))
_PRIMES: list[int] = []


def _is_prime(n: int) -> bool:
    for p in _TRIAL:
        if p * p > n:
            return True
        if n % p == 0:
            return False
    return True


def primes(count: int) -> list[int]:
    """The ``count`` largest primes below 2**25, descending."""
    n = (_PRIMES[-1] - 2) if _PRIMES else (1 << _PRIME_BITS) - 1
    while len(_PRIMES) < count:
        if _is_prime(n):
            _PRIMES.append(n)
        n -= 2
    return _PRIMES[:count]


# ---------------------------------------------------------------------------
# convolution kernels (int64 in, int64 out)


def _conv2d_numpy(a, b, nrows, p):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((nrows, ca + cb - 1), dtype=np.int64)
    for i in range(min(ra, nrows)):
        ai = a[i]
        if not ai.any():
            continue
        for j in range(min(rb, nrows - i)):
            bj = b[j]
            if not bj.any():
                continue
            out[i + j] += np.convolve(ai, bj)
            if p:
                out[i + j] %= p
    return out


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _conv2d_numba(a, b, nrows, p):
        ra, ca = a.shape
        rb, cb = b.shape
        out = np.zeros((nrows, ca + cb - 1), dtype=np.int64)
        for i in range(min(ra, nrows)):
            for j in range(min(rb, nrows - i)):
                row = out[i + j]
                touched = False
                for s in range(ca):
                    x = a[i, s]
                    if x == 0:
                        continue
                    for t in range(cb):
                        row[s + t] += x * b[j, t]
                    touched = True
                if p and touched:
                    for s in range(ca + cb - 1):
                        row[s] %= p
        return out

else:  # pragma: no cover
    _conv2d_numba = None


def _conv2d_int64(a, b, nrows, p):
    if BACKEND == "numba":
        return _conv2d_numba(a, b, nrows, p)
    return _conv2d_numpy(a, b, nrows, p)


def _max_abs(arr) -> int:
    if arr.size == 0:
        return 0
    return max(abs(int(arr.max())), abs(int(arr.min())))


def convolve2d(a, b, nrows: int):
    """Exact 2-D convolution of integer object arrays, first ``nrows`` rows.

    ``a`` and ``b`` hold Python ints (dtype object).  Row ``k`` of the result
    is ``sum_{i+j=k} conv(a[i], b[j])``.
    """
    ra, ca = a.shape
    rb, cb = b.shape
    width = ca + cb - 1
    if nrows <= 0 or ra == 0 or rb == 0:
        return np.zeros((max(nrows, 0), max(width, 0)), dtype=object)
    if min(ca, cb) >= _MAX_WIDTH:
        raise ValueError("series too wide for the int64 kernels")
    terms = min(ra * ca, rb * cb)
    bound = _max_abs(a) * _max_abs(b) * terms
    if bound < _DIRECT_LIMIT:
        out = _conv2d_int64(a.astype(np.int64), b.astype(np.int64), nrows, 0)
        return out.astype(object)

    # multi-modular: enough primes for the symmetric range (-bound, bound)
    need = 2 * bound + 1
    ps: list[int] = []
    modulus = 1
    k = 1
    while modulus <= need:
        ps = primes(k)
        modulus = math.prod(ps)
        k += 1
    residues = []
    for p in ps:
        ap = (a % p).astype(np.int64)
        bp = (b % p).astype(np.int64)
        residues.append(_conv2d_int64(ap, bp, nrows, p))
    return crt(residues, ps)


def crt(residues, ps):
    """Garner reconstruction into the symmetric range around zero."""
    x = residues[0].astype(object)
    m = ps[0]
    for r, p in zip(residues[1:], ps[1:]):
        inv = pow(m % p, -1, p)
        t = ((r.astype(object) - x % p) * inv) % p
        x = x + m * t
        m *= p
    half = m // 2
    return np.where(x > half, x - m, x)


# ---------------------------------------------------------------------------
# E8 lattice enumeration
#
# Vectors are handled in doubled coordinates y = 2v: all y_i of one parity and
# sum(y) = 0 mod 4.  (v,v) = |y|^2/4, (v,w) = y.z/4.


def _e8_histogram_numpy(nmax, z, lmax):
    limit = 8 * nmax  # |y|^2 <= 8*nmax  <=>  (v,v)/2 <= nmax
    hist = np.zeros((nmax + 1, 2 * lmax + 1), dtype=np.int64)
    r = math.isqrt(limit)
    for parity in (0, 1):
        vals = np.arange(-r, r + 1)
        vals = vals[(vals - parity) % 2 == 0]
        pts = np.zeros((1, 0), dtype=np.int64)
        norms = np.zeros(1, dtype=np.int64)
        for _ in range(8):
            new_norms = (norms[:, None] + vals[None, :] ** 2).ravel()
            keep = new_norms <= limit
            idx = np.nonzero(keep)[0]
            rows = idx // len(vals)
            cols = idx % len(vals)
            pts = np.hstack([pts[rows], vals[cols][:, None]])
            norms = new_norms[keep]
        ok = pts.sum(axis=1) % 4 == 0
        pts, norms = pts[ok], norms[ok]
        n = norms // 8
        l2 = (pts @ z) // 2
        np.add.at(hist, (n, l2 + lmax), 1)
    return hist


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _e8_histogram_numba(nmax, z, lmax):
        limit = 8 * nmax
        hist = np.zeros((nmax + 1, 2 * lmax + 1), dtype=np.int64)
        y = np.zeros(8, dtype=np.int64)
        partial = np.zeros(9, dtype=np.int64)
        for parity in range(2):
            d = 0
            rem = limit
            r = int(np.sqrt(rem))
            while (r * r) > rem:
                r -= 1
            if (r - parity) % 2 != 0:
                r -= 1
            y[0] = -r
            while d >= 0:
                rem = limit - partial[d]
                if y[d] * y[d] > rem:
                    if y[d] > 0:
                        d -= 1
                        if d >= 0:
                            y[d] += 2
                        continue
                    y[d] += 2
                    continue
                s = partial[d] + y[d] * y[d]
                if d == 7:
                    tot = 0
                    dot = 0
                    for i in range(8):
                        tot += y[i]
                        dot += y[i] * z[i]
                    if tot % 4 == 0:
                        hist[s // 8, dot // 2 + lmax] += 1
                    y[d] += 2
                else:
                    partial[d + 1] = s
                    d += 1
                    rem = limit - s
                    r = int(np.sqrt(rem))
                    while (r * r) > rem:
                        r -= 1
                    while (r + 1) * (r + 1) <= rem:
                        r += 1
                    if (r - parity) % 2 != 0:
                        r -= 1
                    y[d] = -r
        return hist

else:  # pragma: no cover
    _e8_histogram_numba = None


def e8_histogram(nmax: int, z) -> tuple[np.ndarray, int]:
    """Count E8 vectors v with (v,v)/2 <= nmax by ((v,v)/2, 2(v,w)).

    ``z`` is 2w in doubled coordinates (int64, length 8).  Returns the
    histogram and the column offset ``lmax`` (column ``c`` holds 2(v,w) =
    c - lmax).
    """
    z = np.asarray(z, dtype=np.int64)
    wnorm = int(z @ z) // 4
    # |2(v,w)| <= 2 sqrt((v,v)(w,w)) = 2 sqrt(2 nmax wnorm)
    lmax = 2 * math.isqrt(2 * nmax * wnorm) + 2
    if BACKEND == "numba":
        hist = _e8_histogram_numba(nmax, z, lmax)
    else:
        hist = _e8_histogram_numpy(nmax, z, lmax)
    return hist, lmax
