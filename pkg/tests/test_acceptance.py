"""The ten acceptance criteria, one test each.

Every test records a PASS/FAIL line in ``conftest.ACCEPTANCE``; the lines
are printed in the terminal summary of the run.
"""

from fractions import Fraction
from math import gcd

import numpy as np
import pytest

import conftest
from jacring import forms as FM
from jacring import thetas as T
from jacring.borcherds import borcherds_weight, psi_named, q0_identity_residual
from jacring.polynomial import gens, to_base4
from jacring.relations import RELATIONS, verify_relations
from jacring.siegel import gritsenko_lift, siegel_certify_integral
from jacring.structure import certify_integral, decompose_weak0, decompose_weak_even, decompose_wh0, psi_basis

from printed import PSI, ROWS, XI06_Q1, row_of
from randpoly import random_certifier_input, random_weak0, random_weak_even, random_wh0

P = 24 * 16


def record(k, desc, ok, detail=""):
    conftest.ACCEPTANCE[k] = (bool(ok), desc, detail)
    assert ok, f"criterion {k}: {detail}"


def test_c01_printed_expansions():
    bad = []
    for name, (q0, q1) in ROWS.items():
        s = FM.generator(name, P).series
        if row_of(s, 0) != q0 or row_of(s, 1) != q1:
            bad.append(name)
    xi = FM.generator("xi_0_6", P).series
    if xi.row(0) or xi.row(24) != XI06_Q1:
        bad.append("xi_0_6")
    for name, (neg, zero) in PSI.items():
        s = psi_named(name, P).series
        if row_of(s, -1) != neg or row_of(s, 0) != zero:
            bad.append(name)
    n = len(ROWS) + 1 + len(PSI)
    record(1, "printed q-expansion rows", not bad, f"{n - len(bad)}/{n} forms match" + (f", bad: {bad}" if bad else ""))


def test_c02_relation_suite():
    rels = [r for r in RELATIONS if not r.modulus]
    res = verify_relations(24 * 12, relations=tuple(rels))
    bad = [r.name for r in res if not r.passed]
    record(2, "relation suite to q^12", not bad, f"{len(res) - len(bad)}/{len(res)} relations" + (f", bad: {bad}" if bad else ""))


def test_c03_congruences():
    rels = tuple(r for r in RELATIONS if r.modulus)
    res = verify_relations(24 * 12, relations=rels)
    ok = len(res) == 2 and all(r.passed for r in res)
    record(3, "E41 = E61 mod 24, E42 = E41^2 mod 12", ok, ", ".join(f"{r.name}: {r.passed}" for r in res))


def test_c04_oracles():
    theta_ok = T.theta(24 * 10).series == T.theta_product(24 * 10)
    e8 = [FM.theta_E8_specialize(m, 24 * 8).series.agrees(FM.jacobi_eisenstein(4, m, 24 * 8).series, 24 * 8)
          for m in (1, 2, 3)]
    record(4, "theta sum = triple product; E8 theta = E4_m", theta_ok and all(e8),
           f"theta: {theta_ok}, E8 m=1,2,3: {e8}")


def test_c05_psi_basis():
    bad = []
    for m in range(1, 13):
        q0 = psi_basis(m).q0_matrix
        g = gcd(12, m)
        ok = q0[0] == ((12 - 2 * m) // g, m // g) + (0,) * (m - 1)
        if m >= 2:
            ok = ok and q0[1] == (6, -4, 1) + (0,) * (m - 2)
        if not ok:
            bad.append(m)
    record(5, "psi basis leading rows for m = 1..12", not bad, "all indices match" if not bad else f"bad: {bad}")


def test_c06_certifier_soundness():
    rng = np.random.default_rng(2024)
    agree = 0
    verdicts = {"INTEGRAL": 0, "NOT-INTEGRAL": 0}
    bad = []
    for i in range(200):
        p = random_certifier_input(rng)
        w, m = p.degree()
        assert w <= 12 and m <= 8
        c = certify_integral(p)
        full = p.expand(P).is_integral
        verdicts[c.verdict] += 1
        if c.integral == full:
            agree += 1
        else:
            bad.append((i, str(p)))
    record(6, "certify_integral agrees with full integrality", agree == 200,
           f"{agree}/200 agree; verdicts {verdicts}" + (f"; first bad {bad[0]}" if bad else ""))


def test_c07_round_trips():
    rng = np.random.default_rng(77)
    counts = {}
    for label, make, dec in (("weak0", random_weak0, decompose_weak0),
                             ("weak-even", random_weak_even, decompose_weak_even),
                             ("wh0", random_wh0, decompose_wh0)):
        ok = 0
        for _ in range(100):
            p, d = make(rng)
            f = p.expand_form(P, d)
            r = dec(f)
            ok += r.is_integral() and r.expand(P).agrees(f.series, P)
        counts[label] = ok
    record(7, "expand . decompose = expand (100 per ring)", all(v == 100 for v in counts.values()), str(counts))


def test_c08_e63_denominator():
    g = gens("WEAK_EVEN_14")
    p = g["F6_3"] - Fraction(144, 61) * g["Delta"] * g["phi_m2_1"] ** 3
    s = p.expand(24 * 6)
    hit = next(((n24 // 24, l2 // 2, c) for (n24, l2), c in s.items() if c.denominator % 61 == 0), None)
    cert = certify_integral(to_base4(p))
    record(8, "F63 - (144/61) Delta phi_m2_1^3 has a 61 in the denominator", hit is not None,
           f"first at (n, l) = {hit[:2]}, coefficient {hit[2]}; certifier {cert.verdict}" if hit else "none found")


def test_c09_borcherds():
    names = ("phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4", "G4_1", "G4_2", "G4_3")
    res = {n: q0_identity_residual(FM.generator(n, P)) for n in names}
    psis = {n: psi_named(n, P) for n in ("psi_0_1", "psi_0_2", "psi_0_3")}
    res.update({n: q0_identity_residual(f) for n, f in psis.items()})
    weights = [borcherds_weight(FM.generator(n, P)) for n in names[:4]] + [borcherds_weight(f) for f in psis.values()]
    want = [5, 2, 1, Fraction(1, 2), 35, 12, 12]
    ok = all(v == 0 for v in res.values()) and weights == want
    record(9, "q0 identity and Borcherds weights", ok, f"weights {[str(w) for w in weights]}")


def test_c10_siegel():
    phi = FM.generator("Delta", P) * FM.generator("phi_m2_1", P)
    F = gritsenko_lift(phi, 4)
    sym = F.symmetry_violation()
    c = siegel_certify_integral(F)
    c2 = siegel_certify_integral(gritsenko_lift(phi * Fraction(1, 2), 4))
    ok = sym is None and c.verdict == "INTEGRAL" and c2.verdict == "NOT-INTEGRAL" and c2.witness is not None
    n_triples = sum(1 for t in F.triples() if t[0] <= F.M and t[2] < F.rows(t[0]))
    record(10, "Siegel certifier on a weight-10 lift", ok,
           f"symmetry on {n_triples} triples, verdict {c.verdict}; halved: {c2.verdict} at {c2.witness}")
