"""Elliptic building blocks: Jacobi theta series, eta, Delta, E4, E6, j.

Every constructor takes the precision ``prec24`` (exclusive bound on the
scaled q-exponent) and returns a series known exactly to that precision.
Results are memoized per precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import ScaledSeries, sigma

LABELS = (
    "theta", "theta00", "theta01", "theta10", "eta", "delta",
    "E4", "E6", "j", "xi00", "xi01", "xi10",
)

# slack added before a division and removed afterwards
_MARGIN = 72


@dataclass(frozen=True)
class BasicForm:
    label: str
    series: ScaledSeries

    def __post_init__(self):
        if self.label not in LABELS and not self.label.startswith("theta_const"):
            raise ValueError(f"unknown label {self.label!r}")


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _check_prec(prec24: int, least: int = 4):
    if prec24 < least:
        raise ValueError(f"prec24 must be at least {least}")


# -- theta series -------------------------------------------------------------------


def _n_range(prec24: int):
    # n(n+1)/2 and n^2/2 both exceed prec24/24 once |n| > sqrt(prec24/12) + 1
    r = math.isqrt(max(prec24, 0) // 12) + 2
    return range(-r, r + 1)


@lru_cache(maxsize=None)
def _theta_sum(prec24: int) -> ScaledSeries:
    terms = {}
    for n in _n_range(prec24):
        n24 = 3 + 12 * n * (n + 1)
        if n24 < prec24:
            terms[(n24, 2 * n + 1)] = _sign(n)
    return ScaledSeries(terms, prec24)


def theta(prec24: int) -> BasicForm:
    """The odd theta series q^(1/8) zeta^(1/2) sum (-1)^n q^(n(n+1)/2) zeta^n."""
    _check_prec(prec24)
    return BasicForm("theta", _theta_sum(prec24))


def theta_product(prec24: int) -> ScaledSeries:
    """Triple-product expansion of theta (independent oracle for :func:`theta`)."""
    _check_prec(prec24)
    work = prec24 - 3
    acc = ScaledSeries({(3, 1): 1, (3, -1): -1}, prec24)
    for n in range(1, work // 24 + 1):
        q = 24 * n
        acc = acc * ScaledSeries({(0, 0): 1, (q, 2): -1}, prec24)
        acc = acc * ScaledSeries({(0, 0): 1, (q, -2): -1}, prec24)
        acc = acc * ScaledSeries({(0, 0): 1, (q, 0): -1}, prec24)
    return acc.truncate(prec24)


@lru_cache(maxsize=None)
def _theta_ab(ab: str, prec24: int) -> ScaledSeries:
    terms = {}
    for n in _n_range(prec24):
        if ab == "00":
            key, c = (12 * n * n, 2 * n), 1
        elif ab == "01":
            key, c = (12 * n * n, 2 * n), _sign(n)
        elif ab == "10":
            key, c = (3 + 12 * n * (n + 1), 2 * n + 1), 1
        else:
            raise ValueError(f"theta characteristic must be 00, 01 or 10, got {ab!r}")
        if key[0] < prec24:
            terms[key] = c
    return ScaledSeries(terms, prec24)


def theta_ab(ab: str, prec24: int) -> BasicForm:
    _check_prec(prec24)
    return BasicForm("theta" + ab, _theta_ab(ab, prec24))


def theta_constant(ab: str, prec24: int) -> BasicForm:
    """theta_ab(tau, 0)."""
    _check_prec(prec24)
    return BasicForm("theta_const" + ab, _theta_ab(ab, prec24).at_z0())


@lru_cache(maxsize=None)
def _xi(ab: str, prec24: int) -> ScaledSeries:
    work = prec24 + _MARGIN
    full = _theta_ab(ab, work)
    return full.exact_div(full.at_z0()).truncate(prec24)


def xi_ab(ab: str, prec24: int) -> BasicForm:
    """theta_ab(tau, z) / theta_ab(tau, 0)."""
    _check_prec(prec24)
    return BasicForm("xi" + ab, _xi(ab, prec24))


# -- one-variable forms ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _eta(prec24: int) -> ScaledSeries:
    terms = {}
    k = 0
    while True:
        fresh = False
        for kk in {k, -k}:
            n24 = 1 + 12 * kk * (3 * kk - 1)
            if n24 < prec24:
                terms[(n24, 0)] = _sign(kk)
                fresh = True
        if not fresh and k > 0:
            break
        k += 1
    return ScaledSeries(terms, prec24)


def eta(prec24: int) -> BasicForm:
    """Dedekind eta from the pentagonal-number sum."""
    _check_prec(prec24, 2)
    return BasicForm("eta", _eta(prec24))


@lru_cache(maxsize=None)
def _delta(prec24: int) -> ScaledSeries:
    return (_eta(prec24) ** 24).truncate(prec24)


def delta(prec24: int) -> BasicForm:
    """Delta = eta^24."""
    _check_prec(prec24, 2)
    return BasicForm("delta", _delta(prec24))


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention)."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum(math.comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return b[n]


@lru_cache(maxsize=None)
def eisenstein(k: int, prec24: int) -> ScaledSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k >= 4 even."""
    if k < 4 or k % 2:
        raise ValueError("weight must be an even integer >= 4")
    c = -Fraction(2 * k) / bernoulli(k)
    terms = {(0, 0): 1}
    for n in range(1, -(-prec24 // 24)):
        terms[(24 * n, 0)] = c * sigma(k - 1, n)
    return ScaledSeries(terms, prec24)


def E4(prec24: int) -> BasicForm:
    return BasicForm("E4", eisenstein(4, prec24))


def E6(prec24: int) -> BasicForm:
    return BasicForm("E6", eisenstein(6, prec24))


@lru_cache(maxsize=None)
def _j(prec24: int) -> ScaledSeries:
    work = prec24 + 48
    return (eisenstein(4, work) ** 3).exact_div(_delta(work)).truncate(prec24)


def j_invariant(prec24: int) -> BasicForm:
    """j = E4^3 / Delta."""
    if prec24 < 48:
        raise ValueError("prec24 must be at least 48 for j")
    return BasicForm("j", _j(prec24))
