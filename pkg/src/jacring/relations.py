"""Coefficientwise verification of the displayed relations between generators.

Each relation is a pair of functions of a namespace of generator series.
The namespace records which generators a relation reads, so that a fault
injected into one generator (via ``overrides``) can be traced to exactly
the relations that mention it.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable

from . import forms as FM
from .series import ScaledSeries

# extra rows computed beyond the comparison precision (poles of j and G4_m)
_SLACK = 72


class _Namespace:
    def __init__(self, prec24: int, overrides: dict | None):
        self._prec = prec24
        self._over = overrides or {}
        self._cache: dict[str, ScaledSeries] = {}

    def get(self, name: str) -> ScaledSeries:
        if name not in self._cache:
            if name in self._over:
                s = self._over[name]
            elif name == "E6_3p":
                s = FM.e63_prime(self._prec).series
            elif name == "E6_3":
                s = FM.e63(self._prec).series
            else:
                s = FM.generator(name, self._prec).series
            self._cache[name] = s
        return self._cache[name]


class _Recorder:
    def __init__(self, ns: _Namespace):
        self._ns = ns
        self.mentions: set[str] = set()

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        self.mentions.add(name)
        return self._ns.get(name)


@dataclass(frozen=True)
class Relation:
    name: str
    source: str
    lhs: Callable
    rhs: Callable
    modulus: int = 0  # nonzero: lhs - rhs must vanish modulo this


def _rel(name, source, lhs, rhs, modulus=0):
    return Relation(name, source, lhs, rhs, modulus)


def _xi_poly(g):
    return (
        -(g.phi_0_1 ** 2) * g.phi_0_4
        + 9 * g.phi_0_1 * g.phi_0_2 * g.phi_0_3
        - 8 * g.phi_0_2 ** 3
        - 27 * g.phi_0_3 ** 2
    )


RELATIONS: tuple[Relation, ...] = (
    # weight-0 ring
    _rel("4phi04", "weight-0 ring", lambda g: 4 * g.phi_0_4, lambda g: g.phi_0_1 * g.phi_0_3 - g.phi_0_2 ** 2),
    _rel("xi06-discriminant", "weight-0 ring", lambda g: g.xi_0_6, _xi_poly),
    # Eisenstein block
    _rel("12E41", "Eisenstein block", lambda g: 12 * g.E4_1, lambda g: g.E4 * g.phi_0_1 - g.E6 * g.phi_m2_1),
    _rel("12E42", "Eisenstein block", lambda g: 12 * g.E4_2, lambda g: g.E4_1 * g.phi_0_1 - g.E6_1 * g.phi_m2_1),
    _rel("12E61", "Eisenstein block", lambda g: 12 * g.E6_1, lambda g: g.E6 * g.phi_0_1 - g.E4 ** 2 * g.phi_m2_1),
    _rel("12E62", "Eisenstein block", lambda g: 12 * g.E6_2, lambda g: g.E6_1 * g.phi_0_1 - g.E4 * g.E4_1 * g.phi_m2_1),
    _rel("2E43", "Eisenstein block", lambda g: 2 * g.E4_3, lambda g: g.E4_1 * g.phi_0_2 - g.E4 * g.phi_0_3),
    _rel("6E43", "Eisenstein block", lambda g: 6 * g.E4_3, lambda g: g.E4_2 * g.phi_0_1 - g.E4_1 * g.phi_0_2),
    # F63 definition and the theta-constant form
    _rel("F63-def", "F63", lambda g: 2 * g.F6_3, lambda g: g.E6_1 * g.phi_0_2 - g.E6 * g.phi_0_3),
    _rel("F63-theta", "F63", lambda g: g.F6_3, lambda g: g.E6_3p + 2 * g.Delta * g.phi_m2_1 ** 3),
    # fourteen-generator ring
    _rel("1728Delta", "14 generators", lambda g: 1728 * g.Delta, lambda g: g.E4 ** 3 - g.E6 ** 2),
    _rel("24phi02", "14 generators", lambda g: 24 * g.phi_0_2, lambda g: g.phi_0_1 ** 2 - g.E4 * g.phi_m2_1 ** 2),
    _rel(
        "432phi03", "14 generators",
        lambda g: 432 * g.phi_0_3,
        lambda g: g.phi_0_1 ** 3 - 3 * g.E4 * g.phi_0_1 * g.phi_m2_1 ** 2 + 2 * g.E6 * g.phi_m2_1 ** 3,
    ),
    _rel("4phi04/14", "14 generators", lambda g: 4 * g.phi_0_4, lambda g: g.phi_0_1 * g.phi_0_3 - g.phi_0_2 ** 2),
    _rel("12E41/14", "14 generators", lambda g: 12 * g.E4_1, lambda g: g.E4 * g.phi_0_1 - g.E6 * g.phi_m2_1),
    _rel("12E61/14", "14 generators", lambda g: 12 * g.E6_1, lambda g: g.E6 * g.phi_0_1 - g.E4 ** 2 * g.phi_m2_1),
    _rel("6E42", "14 generators", lambda g: 6 * g.E4_2, lambda g: g.E4_1 * g.phi_0_1 - g.E4 * g.phi_0_2),
    _rel(
        "6E42-base", "14 generators",
        lambda g: 6 * g.E4_2,
        lambda g: (g.E4 * g.phi_0_1 ** 2 - 2 * g.E6 * g.phi_0_1 * g.phi_m2_1 + g.E4 ** 2 * g.phi_m2_1 ** 2) * Q(1, 24),
    ),
    _rel("6E62", "14 generators", lambda g: 6 * g.E6_2, lambda g: g.E6_1 * g.phi_0_1 - g.E6 * g.phi_0_2),
    _rel(
        "6E62-base", "14 generators",
        lambda g: 6 * g.E6_2,
        lambda g: (g.E6 * g.phi_0_1 ** 2 - 2 * g.E4 ** 2 * g.phi_0_1 * g.phi_m2_1 + g.E4 * g.E6 * g.phi_m2_1 ** 2) * Q(1, 24),
    ),
    _rel("2E43/14", "14 generators", lambda g: 2 * g.E4_3, lambda g: g.E4_1 * g.phi_0_2 - g.E4 * g.phi_0_3),
    _rel("2E43-third", "14 generators", lambda g: 2 * g.E4_3, lambda g: (g.E4_2 * g.phi_0_1 - g.E4_1 * g.phi_0_2) * Q(1, 3)),
    _rel("2E43-quarter", "14 generators", lambda g: 2 * g.E4_3, lambda g: (g.E4_2 * g.phi_0_1 - g.E4 * g.phi_0_3) * Q(1, 4)),
    _rel("2F63", "14 generators", lambda g: 2 * g.F6_3, lambda g: g.E6_1 * g.phi_0_2 - g.E6 * g.phi_0_3),
    _rel(
        "2F63-third", "14 generators",
        lambda g: 2 * g.F6_3,
        lambda g: (g.E6_2 * g.phi_0_1 - g.E6_1 * g.phi_0_2) * Q(1, 3) + 8 * g.Delta * g.phi_m2_1 ** 3,
    ),
    _rel(
        "2F63-quarter", "14 generators",
        lambda g: 2 * g.F6_3,
        lambda g: (g.E6_2 * g.phi_0_1 - g.E6 * g.phi_0_3) * Q(1, 4) + 6 * g.Delta * g.phi_m2_1 ** 3,
    ),
    _rel(
        "2F63-E63", "14 generators",
        lambda g: 2 * g.F6_3,
        lambda g: 2 * g.E6_3 + Q(288, 61) * g.Delta * g.phi_m2_1 ** 3,
    ),
    _rel("144Delta-phim21", "index-one forms", lambda g: 144 * g.Delta * g.phi_m2_1, lambda g: g.E6 * g.E4_1 - g.E4 * g.E6_1),
    # half-integral index
    _rel("phi03half^2", "half-integral index", lambda g: g.phi_0_3half ** 2, lambda g: g.phi_0_3),
    _rel("phim1half^2", "half-integral index", lambda g: g.phi_m1_half ** 2, lambda g: g.phi_m2_1),
    _rel("phi03half*phim1half", "half-integral index", lambda g: g.phi_0_3half * g.phi_m1_half, lambda g: g.phi_m1_2),
    # weakly holomorphic weight-0 ring
    _rel("4phi04/wh", "weakly holomorphic", lambda g: 4 * g.phi_0_4, lambda g: g.phi_0_1 * g.phi_0_3 - g.phi_0_2 ** 2),
    _rel("j-discriminant", "weakly holomorphic", lambda g: (g.phi_0_1 ** 2 - 24 * g.phi_0_2) ** 3, lambda g: g.j * _xi_poly(g)),
    _rel(
        "G1-quadratic", "weakly holomorphic",
        lambda g: 6 * g.G4_1 ** 2 - g.j * g.phi_0_1 * g.G4_1 + 72 * g.j * g.phi_0_1 ** 2 + g.j * (g.j - 1728) * g.phi_0_2,
        lambda g: ScaledSeries.zero(10 ** 9),
    ),
    _rel("6G2", "weakly holomorphic", lambda g: 6 * g.G4_2, lambda g: g.G4_1 * g.phi_0_1 - g.j * g.phi_0_2),
    _rel("2G3", "weakly holomorphic", lambda g: 2 * g.G4_3, lambda g: g.G4_1 * g.phi_0_2 - g.j * g.phi_0_3),
    # congruences
    _rel("E41=E61 mod 24", "congruence", lambda g: g.E4_1 - g.E6_1, lambda g: ScaledSeries.zero(10 ** 9), 24),
    _rel("E42=E41^2 mod 12", "congruence", lambda g: g.E4_2 - g.E4_1 ** 2, lambda g: ScaledSeries.zero(10 ** 9), 12),
)


@dataclass
class RelationResult:
    name: str
    source: str
    passed: bool
    mentions: tuple[str, ...]
    compared_prec24: int
    first_difference: tuple | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source,
            "passed": self.passed,
            "mentions": list(self.mentions),
            "compared_prec24": self.compared_prec24,
            "first_difference": None
            if self.first_difference is None
            else [str(x) for x in self.first_difference],
        }


def _check(rel: Relation, ns: _Namespace, prec24: int) -> RelationResult:
    rec = _Recorder(ns)
    a, b = rel.lhs(rec), rel.rhs(rec)
    p = min(a.prec24, b.prec24, prec24)
    if rel.modulus:
        d = (a - b).truncate(p)
        bad = None
        if not d.is_integral:
            bad = next((k, c) for k, c in d.items() if c.denominator != 1)
        else:
            r = d.reduce_mod(rel.modulus)
            if not r.is_zero:
                bad = r.items()[0]
        diff = None if bad is None else (bad[0][0], bad[0][1], bad[1], 0)
    else:
        diff = a.first_difference(b, p)
    return RelationResult(rel.name, rel.source, diff is None and p >= prec24, tuple(sorted(rec.mentions)), p, diff)


def verify_relations(prec24: int, overrides: dict | None = None, workers: int = 1,
                     relations=RELATIONS) -> list[RelationResult]:
    """Check every relation coefficientwise below ``prec24``."""
    ns = _Namespace(prec24 + _SLACK, overrides)
    if workers <= 1:
        return [_check(r, ns, prec24) for r in relations]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: _check(r, ns, prec24), relations))


def report_ok(results: list[RelationResult]) -> bool:
    return all(r.passed for r in results)
