from fractions import Fraction

import numpy as np
import pytest

from jacring import forms as FM
from jacring.borcherds import (
    SingularData,
    borcherds_weight,
    psi_named,
    psi_poly,
    q0_identity_residual,
    realize_singular,
    singular_part,
)
from jacring.errors import NonIntegral, NotRealizable
from jacring.structure import decompose_wh0

from printed import PSI, row_of
from randpoly import monomials, random_poly

P = 24 * 16
EIGHT = ("phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4", "G4_1", "G4_2", "G4_3")


@pytest.mark.parametrize("name", sorted(PSI))
def test_psi_printed_rows(name):
    f = psi_named(name, P)
    neg, zero = PSI[name]
    assert f.series.ord24 == -24
    assert row_of(f.series, -1) == neg and row_of(f.series, 0) == zero
    assert f.series.is_integral


def test_singular_parts():
    d = singular_part(psi_named("psi_0_1", P))
    assert d.entries == {(-1, 0): 1, (0, -2): 1, (0, 2): 1, (0, 0): 70}
    assert d.singular() == {(-1, 0): 1, (0, -2): 1, (0, 2): 1}
    d = singular_part(FM.generator("phi_0_1", P))
    assert d.singular() == {(0, -1): 1, (0, 1): 1} and d.min_order == 0
    assert singular_part(psi_named("psi_0_2", P)).entries == {(-1, 0): 1, (0, 0): 24}


def test_singular_part_of_large_index_keeps_positive_rows():
    # index 6: rows n < 6/4 include n = 1, where 24 - l^2 < 0 for |l| >= 5
    d = singular_part(FM.generator("xi_0_6", P))
    assert d.entries[(1, 6)] == 1 and d.entries[(1, 5)] == -12


def test_q0_identity():
    assert q0_identity_residual(FM.generator("phi_0_1", P)) == 0
    assert q0_identity_residual(psi_named("psi_0_1", P)) == 0
    shifted = FM.generator("phi_0_1", P).series + 1
    f = FM.generator("phi_0_1", P).with_series(shifted)
    assert q0_identity_residual(f) == 1


@pytest.mark.parametrize("name", EIGHT)
def test_q0_identity_on_generators(name):
    assert q0_identity_residual(FM.generator(name, P)) == 0


def test_q0_identity_on_random_polynomials():
    rng = np.random.default_rng(5)
    groups = monomials("WH0_8", 6, max_poles=2)
    for _ in range(25):
        p, d = random_poly(rng, "WH0_8", groups, min_index=1)
        assert q0_identity_residual(p.expand_form(24 * 4, d)) == 0


def test_weights():
    want = {"phi_0_1": 5, "phi_0_2": 2, "phi_0_3": 1, "phi_0_4": Fraction(1, 2)}
    for name, w in want.items():
        assert borcherds_weight(FM.generator(name, P)) == w
    assert [borcherds_weight(psi_named(n, P)) for n in ("psi_0_1", "psi_0_2", "psi_0_3")] == [35, 12, 12]


def test_weight_is_additive():
    a, b = FM.generator("phi_0_2", P), psi_named("psi_0_2", P)
    assert borcherds_weight(a + b) == borcherds_weight(a) + borcherds_weight(b)


def test_non_integral_rejected():
    f = FM.generator("phi_0_1", P) * Fraction(1, 3)
    with pytest.raises(NonIntegral):
        singular_part(f)


@pytest.mark.parametrize("name", ["psi_0_1", "psi_0_2", "psi_0_3"])
def test_realize_named_forms(name):
    d = singular_part(psi_named(name, P))
    p = realize_singular(d)
    assert p == psi_poly(name)


def test_realize_random_data():
    rng = np.random.default_rng(9)
    groups = monomials("WH0_8", 4, max_poles=2)
    for _ in range(10):
        p, deg = random_poly(rng, "WH0_8", groups, min_index=1)
        f = p.expand_form(24 * 3, deg)
        r = realize_singular(singular_part(f))
        assert r.expand(24 * 3).agrees(f.series, 24 * 3)


def test_unrealizable_data():
    # a lone q^-1 zeta^0 term at index 1 with no q^0 row breaks the q^0 identity
    with pytest.raises(NotRealizable) as exc:
        realize_singular(SingularData(1, {(-1, 0): 1}))
    assert exc.value.obstruction is not None


def test_decompose_psi3_round_trip():
    f = psi_named("psi_0_3", P)
    assert decompose_wh0(f).expand(P).agrees(f.series, P)


def test_json_and_symmetry():
    d = singular_part(psi_named("psi_0_1", P))
    assert SingularData.from_json(d.to_json()) == d
    with pytest.raises(ValueError):
        SingularData(1, {(0, 1): 1})
