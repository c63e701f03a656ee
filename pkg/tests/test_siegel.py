from fractions import Fraction

import pytest

from jacring import forms as FM
from jacring.errors import InsufficientData, NotHolomorphic, UnsupportedCharacter
from jacring.siegel import FourierJacobiExpansion, gritsenko_lift, siegel_certify_integral

P = 24 * 16


@pytest.fixture(scope="module")
def phi10():
    return FM.generator("Delta", P) * FM.generator("phi_m2_1", P)


def test_lift_shape(phi10):
    F = gritsenko_lift(phi10, 4)
    assert F.M == 4 and F.weight == 10
    assert [F.rows(m) for m in range(5)] == [16, 16, 8, 5, 4]
    assert F.fj[0].series.is_zero


def test_lift_symmetry_and_integrality(phi10):
    F = gritsenko_lift(phi10, 4)
    assert F.symmetry_violation() is None
    assert all(F.fj[m].series.is_integral for m in range(5))
    c = siegel_certify_integral(F)
    assert c.verdict == "INTEGRAL"
    assert c.extra["bounds"]["m_max"] == 1
    assert {t[2] for t in c.checked} == {0, 1} and max(t[0] for t in c.checked) == 1


def test_half_scaled_lift(phi10):
    F = gritsenko_lift(phi10 * Fraction(1, 2), 4)
    c = siegel_certify_integral(F)
    assert c.verdict == "NOT-INTEGRAL"
    n, l, m, v = c.witness
    assert v == Fraction(1, 2) and F.c(n, l, m) == v


def test_symmetry_violation_is_reported(phi10):
    F = gritsenko_lift(phi10, 3)
    broken = list(F.fj)
    broken[2] = broken[2] + broken[2]
    hit = FourierJacobiExpansion(10, broken).symmetry_violation()
    assert hit is not None


def test_weight_four_checks_only_the_constant():
    F = gritsenko_lift(FM.generator("E4_1", P), 1)
    c = siegel_certify_integral(F)
    assert c.checked == [(0, 0, 0)]
    # f_0 = c(0,0) (-B_4/8) E_4 = E_4/240
    assert F.c(0, 0, 0) == Fraction(1, 240)
    assert F.symmetry_violation() is None


def test_json_round_trip(phi10):
    F = gritsenko_lift(phi10, 2)
    G = FourierJacobiExpansion.from_json(F.to_json())
    assert all(a.series == b.series for a, b in zip(F.fj, G.fj))


def test_errors(phi10):
    with pytest.raises(UnsupportedCharacter):
        gritsenko_lift(FM.generator("phi_0_2", P), 2)
    with pytest.raises(NotHolomorphic):
        gritsenko_lift(FM.generator("E4", P) * FM.generator("phi_m2_1", P) * FM.generator("E4", P), 2)
    F = gritsenko_lift(phi10, 4)
    short = FourierJacobiExpansion(10, F.fj[:1])
    with pytest.raises(InsufficientData):
        siegel_certify_integral(short)
    with pytest.raises(ValueError):
        FourierJacobiExpansion(10, (F.fj[1],))
