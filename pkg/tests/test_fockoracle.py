from fractions import Fraction as F

import pytest

from conwaymoonshine.classdata import derived_partner, lookup, registry
from conwaymoonshine.fockoracle import (
    ModeSystem,
    TWISTED,
    UNTWISTED,
    assemble_supertrace,
    subset_enumeration_supertrace,
    twisted_supertrace,
    untwisted_supertrace,
)
from conwaymoonshine.frameshape import parse
from conwaymoonshine.moonshine import T_s, t_tilde
from conwaymoonshine.qseries import FracPowerSeries as S

IDENT = parse("1^24")
ORACLE_CLASSES = ("2A", "3A", "4A", "6C")


def test_identity_untwisted_low_coefficients():
    ms = ModeSystem.from_shape(IDENT, UNTWISTED, 3)
    s = untwisted_supertrace(ms)
    assert s.coeff(F(-1, 2)) == 1
    assert s.coeff(0) == -24  # 24 single modes at energy 1/2, odd parity
    assert s.coeff(F(1, 2)) == 276  # pairs of half-modes, even parity


def test_identity_twisted_vanishes():
    ms = ModeSystem.from_shape(IDENT, TWISTED, 4)
    assert twisted_supertrace(ms, 0).is_zero()


def test_untwisted_matches_eta_formula_for_named_classes():
    for name in ORACLE_CLASSES:
        pi = lookup(name).frame_shape
        ms = ModeSystem.from_shape(pi, UNTWISTED, 6)
        assert untwisted_supertrace(ms).agrees_with(t_tilde(pi, 6)), name


def test_untwisted_matches_eta_formula_for_identity():
    ms = ModeSystem.from_shape(IDENT, UNTWISTED, 6)
    assert untwisted_supertrace(ms).agrees_with(t_tilde(IDENT, 6))


def test_twisted_matches_scaled_eta():
    for name in ORACLE_CLASSES:
        rec = lookup(name)
        ms = ModeSystem.from_shape(rec.frame_shape, TWISTED, 6)
        oracle = twisted_supertrace(ms, rec.c_hat_g)
        formula = rec.frame_shape.eta_quotient(1, 7) * rec.c_hat_g
        assert oracle.agrees_with(formula), name


def test_twisted_2a_explicit_product():
    ms = ModeSystem.from_shape(lookup("2A").frame_shape, TWISTED, 6)
    oracle = twisted_supertrace(ms, 4096)
    prod = S.monomial(1, 0, 6)
    for n in range(1, 6):
        prod = prod * (S.monomial(1, 0, 6) + S.monomial(1, n, 6)) ** 24
    assert oracle.agrees_with(prod.shifted(1) * 4096)


def test_twisted_valuation_anchor():
    for name in ORACLE_CLASSES:
        rec = lookup(name)
        ms = ModeSystem.from_shape(rec.frame_shape, TWISTED, 4)
        assert twisted_supertrace(ms, rec.c_hat_g).valuation() == 1


def _assembly_data(rec, degree):
    g_thetas = ModeSystem.from_shape(rec.frame_shape, UNTWISTED, degree).eigen_thetas
    partner_shape, partner_c = derived_partner(rec)
    n_thetas = ModeSystem.from_shape(partner_shape, UNTWISTED, degree).eigen_thetas
    return (g_thetas, rec.c_hat_g), (n_thetas, partner_c)


def test_assemble_identity_class_matches_t2b_expansion():
    thetas_e = ModeSystem.from_shape(IDENT, UNTWISTED, 4).eigen_thetas
    thetas_z = ModeSystem.from_shape(parse("2^24/1^24"), UNTWISTED, 4).eigen_thetas
    series = assemble_supertrace("s", (thetas_e, 0), (thetas_z, 4096), 4)
    assert series.coeff(F(-1, 2)) == 1
    assert series.coeff(0) == 0
    assert series.coeff(F(1, 2)) == 276
    assert series.coeff(1) == -2048


def test_module_weight_one_space_has_dimension_276():
    thetas_e = ModeSystem.from_shape(IDENT, UNTWISTED, 2).eigen_thetas
    thetas_z = ModeSystem.from_shape(parse("2^24/1^24"), UNTWISTED, 2).eigen_thetas
    series = assemble_supertrace("s", (thetas_e, 0), (thetas_z, 4096), 2)
    # L(0) = 1 sits at exponent 1/2; the graded piece is a Lie algebra of
    # dimension 276 and is purely even
    assert series.coeff(F(1, 2)) == 276


def test_assemble_constant_term_vanishes_for_all_registry_classes():
    for rec in registry():
        g_data, n_data = _assembly_data(rec, 1)
        series = assemble_supertrace("s", g_data, n_data, 1)
        assert series.coeff(0) == 0, rec.co0_name


def test_assemble_equals_closed_form_trace():
    for name in ("2A", "3A", "6C", "12A"):
        rec = lookup(name)
        g_data, n_data = _assembly_data(rec, 4)
        series = assemble_supertrace("s", g_data, n_data, 4)
        assert series.agrees_with(T_s(rec.frame_shape, 4)), name


def test_projection_identity():
    # the two orbifold summand pairs tile A + A_tw: main + twisted parts
    # recover the plain sector super traces
    rec = lookup("3A")
    g_data, n_data = _assembly_data(rec, 3)
    main = assemble_supertrace("s", g_data, n_data, 3)
    tw = assemble_supertrace("s", g_data, n_data, 3, twisted=True)
    ms_u = ModeSystem(g_data[0], UNTWISTED, F(3))
    ms_t = ModeSystem(g_data[0], TWISTED, F(3))
    total = untwisted_supertrace(ms_u) + twisted_supertrace(ms_t, rec.c_hat_g)
    assert (main + tw).agrees_with(total)


def test_subset_enumeration_matches_mode_product_untwisted():
    for name in ("2A", "3A", "4A", "6C"):
        pi = lookup(name).frame_shape
        ms = ModeSystem.from_shape(pi, UNTWISTED, 3)
        enum = subset_enumeration_supertrace(ms, budget=3)
        assert enum.agrees_with(untwisted_supertrace(ms)), name
    ms = ModeSystem.from_shape(IDENT, UNTWISTED, 3)
    assert subset_enumeration_supertrace(ms, budget=3).agrees_with(
        untwisted_supertrace(ms)
    )


def test_subset_enumeration_matches_mode_product_twisted():
    for name in ("2A", "3A", "4A", "6C"):
        rec = lookup(name)
        ms = ModeSystem.from_shape(rec.frame_shape, TWISTED, 3)
        enum = subset_enumeration_supertrace(ms, budget=3, c_value=rec.c_hat_g)
        assert enum.agrees_with(twisted_supertrace(ms, rec.c_hat_g)), name


def test_mode_system_validation():
    with pytest.raises(Exception):
        ModeSystem((F(0),) * 23, UNTWISTED, F(3))
    with pytest.raises(Exception):
        ModeSystem.from_shape(IDENT, "sideways", 3)
