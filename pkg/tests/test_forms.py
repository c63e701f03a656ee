from fractions import Fraction

import pytest

from jacring import forms as FM
from jacring import thetas as T
from jacring.errors import NotWeak, UnsupportedCharacter
from jacring.forms import JacobiForm

from printed import ROWS, XI06_Q1, row_of

P = 24 * 16


@pytest.mark.parametrize("name", sorted(ROWS))
def test_printed_leading_rows(name):
    f = FM.generator(name, P)
    q0, q1 = ROWS[name]
    assert row_of(f.series, 0) == q0
    assert row_of(f.series, 1) == q1
    assert f.series.is_integral


def test_xi06_leading_term():
    s = FM.generator("xi_0_6", P).series
    assert s.ord24 == 24
    assert s.row(24) == XI06_Q1


@pytest.mark.parametrize("name", ["phi_m2_1", "phi_0_1", "phi_0_2", "phi_0_3", "phi_0_4", "E4_1", "E6_2", "F6_3"])
def test_coefficients_depend_on_discriminant_and_class(name):
    assert FM.generator(name, P).invariance_violation() is None


def test_support_predicates():
    p01 = FM.generator("phi_0_1", P)
    assert p01.is_weak() and not p01.is_holomorphic()
    assert FM.generator("E4_1", P).is_holomorphic()
    cusp = FM.generator("Delta", P) * FM.generator("phi_m2_1", P)
    assert cusp.is_cusp() and cusp.weight == 10 and cusp.index == 1
    assert not FM.generator("j", P).is_weak()


def test_half_integral_index_characters():
    f = FM.generator("phi_m1_half", P)
    assert f.index == Fraction(1, 2) and f.char_H == 1
    assert f.parity() == -1
    assert f.support_ok()
    g = FM.generator("phi_0_3half", P)
    assert g.parity() == 1 and g.support_ok()
    sq = f * f
    assert sq.trivial_character and sq.index == 1


def test_e8_oracle_matches_eisenstein():
    for m in (1, 2, 3):
        a = FM.theta_E8_specialize(m, 24 * 8).series
        b = FM.jacobi_eisenstein(4, m, 24 * 8).series
        assert a.agrees(b, 24 * 8)


def test_e8_vectors_have_requested_norm():
    for norm in (2, 4, 6):
        y = FM.e8_vector(norm)
        assert sum(c * c for c in y) == 4 * norm
        assert len({c % 2 for c in y}) == 1 and sum(y) % 4 == 0


def test_e63_prime_integral_and_e63_not():
    assert FM.e63_prime(P).series.is_integral
    e = FM.e63(P).series
    assert not e.is_integral and e.denominator % 61 == 0


def test_f_family_unit_constant():
    for k, m in [(4, 0), (6, 0), (8, 2), (10, 5), (12, 6)]:
        f = FM.f_family(k, m, 24 * 4)
        assert f.series.row(0) == {0: 1} and f.series.is_integral
        assert f.weight == k and f.index == m


def test_hecke_U_dilates():
    f = FM.hecke_U(FM.generator("phi_0_1", P), 2)
    assert f.index == 4
    assert f.coefficient(0, 2) == 1 and f.coefficient(0, 1) == 0


def test_hecke_V_index_and_invariance():
    phi = FM.generator("E4_1", P)
    for d in (2, 3):
        f = FM.hecke_V(phi, d)
        assert f.index == d and f.weight == 4
        assert f.prec24 == 24 * (16 // d)
        assert f.invariance_violation() is None


def test_hecke_V_on_constant_term():
    # c(0,0) of V_d phi is sigma_{k-1}(d) c(0,0)
    phi = FM.generator("E4_1", P)
    assert FM.hecke_V(phi, 3).coefficient(0, 0) == 1 + 27


def test_hecke_errors():
    with pytest.raises(UnsupportedCharacter):
        FM.hecke_V(FM.generator("phi_m1_half", P), 2)
    with pytest.raises(NotWeak):
        FM.hecke_V(FM.generator("G4_1", P), 2)


def test_arithmetic_kind_checks():
    a, b = FM.generator("phi_0_1", P), FM.generator("phi_0_2", P)
    with pytest.raises(ValueError):
        a + b
    assert (a * b).index == 3
    assert (a ** 2 / a).series.agrees(a.series)


def test_json_round_trip():
    f = FM.generator("phi_m1_half", 24 * 4)
    g = JacobiForm.from_json(f.to_json())
    assert g.series == f.series and g.index == f.index and g.char_H == f.char_H


def test_g4_quotients():
    g = FM.generator("G4_1", P)
    assert g.series.ord24 == -24 and g.series.is_integral
    ref = (T.eisenstein(4, P + 48) ** 2 * FM.generator("E4_1", P + 48).series).exact_div(T.delta(P + 48).series)
    assert g.series.agrees(ref, P)


def test_unknown_generator():
    with pytest.raises(KeyError):
        FM.generator("phi_9_9", P)
