from fractions import Fraction as F

import pytest

from conwaymoonshine.classdata import lookup, registry
from conwaymoonshine.cliffordcm import spinor_supertrace_closed
from conwaymoonshine.frameshape import parse
from conwaymoonshine.moonshine import (
    T_s,
    T_s_tw,
    dichotomy_check,
    half_shift_relation,
    lemma_residual,
    normalization_reports,
    solve_c_neg,
    t_tilde,
    verify_delta_identity,
    verify_hecke,
    verify_lemma_all,
)
from conwaymoonshine.qseries import FracPowerSeries as S

IDENT = parse("1^24")


def test_t_tilde_identity_expansion():
    tt = t_tilde(IDENT, 4)
    assert tt.coeff(F(-1, 2)) == 1
    assert tt.coeff(0) == -24
    assert tt.coeff(F(1, 2)) == 276
    assert tt.coeff(1) == -2048


def test_t_tilde_2a_delta_rearrangement():
    # eta(tau/2)-quotient for the negated identity equals
    # Delta(tau)^2 / (Delta(2 tau) Delta(tau/2)) up to rearrangement
    lhs = t_tilde(parse("2^24/1^24"), 30)
    d1 = IDENT.eta_quotient(1, 34)
    d2 = IDENT.eta_quotient(2, 34)
    dh = IDENT.eta_quotient(F(1, 2), 32)
    rhs = d1 * d1 * (d2 * dh).invert()
    assert lhs.agrees_with(rhs, through=30)


def test_t_tilde_constant_term_is_minus_chi():
    for rec in registry():
        for pi in (rec.frame_shape, rec.frame_shape.negate()):
            assert t_tilde(pi, 2).coeff(0) == -pi.chi(), rec.co0_name


def test_series_grid_divides_48_lcm():
    # every construction lands on the (1/48K)-grid promised for exponents
    from math import gcd

    for rec in list(registry())[::9]:
        pi = rec.frame_shape
        lcm = 1
        for m in pi.exps:
            lcm = lcm * m // gcd(lcm, m)
        series = t_tilde(pi, 3)
        assert (48 * lcm) % series.denom == 0, rec.co0_name


def test_T_s_identity_reparametrized():
    series = T_s(IDENT, 10).scale_tau(2)
    assert series.coeff(-1) == 1
    assert series.coeff(0) == 0
    assert series.coeff(1) == 276
    assert series.coeff(2) == -2048


def test_T_s_negation_flips_integer_exponent_coefficients():
    # coefficients agree at half-odd exponents and flip sign at integer
    # exponents (the two reparametrized series differ by signs on even
    # powers); the constant term is zero on both sides
    for name in ("3A", "6C", "5A"):
        pi = lookup(name).frame_shape
        a = T_s(pi, 6)
        b = T_s(pi.negate(), 6)
        k = a.denom * b.denom
        for p in set(a.rescaled(k).terms) | set(b.rescaled(k).terms):
            expo = F(p, k)
            ca = a.coeff(expo)
            cb = b.coeff(expo)
            if expo.denominator == 1:
                assert ca == -cb, (name, expo)
            else:
                assert ca == cb, (name, expo)


def test_T_s_tw_2a_expansion():
    tw = T_s_tw(lookup("2A"), 6)
    assert tw.coeff(0) == 24
    assert tw.coeff(1) == 4096


def test_T_s_tw_constant_for_fixed_point_shapes():
    for shape_text in ("1^24", "1^8.2^8", "2^12"):
        pi = parse(shape_text)
        series = T_s_tw(pi, 8, c_value=0)
        assert all(p == 0 for p in series.terms)
        assert series.coeff(0) == -pi.chi()
        assert dichotomy_check(pi, 0) == "constant"


def test_T_s_tw_monster_class_relation_for_2a():
    # 1/eta_g for the order-two class is the level-two hauptmodul with its
    # constant removed: q^-1 prod (1 - q^(2n-1))^24 = T - 24 for the
    # monster partner series
    rec = lookup("2A")
    inv_eta = rec.frame_shape.eta_quotient(1, 20).invert()
    odd = S.monomial(1, 0, 21)
    n = 1
    while 2 * n - 1 < 21:
        odd = odd * (S.monomial(1, 0, 21) - S.monomial(1, 2 * n - 1, 21)) ** 24
        n += 1
    assert inv_eta.agrees_with(odd.shifted(-1))


def test_solve_c_neg_registry_spot_values():
    s3, rep3 = solve_c_neg(lookup("3A"))
    assert s3 == 1 and rep3.passed
    s6, rep6 = solve_c_neg(lookup("6A"))
    assert s6 == 729 and rep6.passed
    s2, rep2 = solve_c_neg(lookup("2A"))
    assert s2 == 0 and rep2.passed


def test_solve_c_neg_magnitude_matches_closed_form():
    for name in ("3A", "6C", "10C", "12E"):
        rec = lookup(name)
        solved, report = solve_c_neg(rec)
        assert report.passed
        closed = spinor_supertrace_closed(rec.frame_shape.negate().eigenvalue_pairs())
        assert abs(solved) == abs(closed.to_rational()), name


def test_lemma_reduces_to_delta_identity_for_identity_element():
    residual = lemma_residual(IDENT, 0, 4096, 25)
    assert residual.max_residual() == 0
    wrong = lemma_residual(IDENT, 0, 2048, 25)
    assert wrong.max_residual() != 0


def test_lemma_sweep_small_order():
    reports = verify_lemma_all(8)
    assert len(reports) == 90
    assert all(r.passed for r in reports)


def test_delta_identity_and_leading_terms():
    report = verify_delta_identity(50)
    assert report.passed and report.max_residual == 0
    # both sides start 24 + 2048 q (the right side is 24 + 2^11 q + ...)
    ident = IDENT
    d1 = ident.eta_quotient(1, 8)
    d2 = ident.eta_quotient(2, 8)
    dh = ident.eta_quotient(F(1, 2), 6)
    lhs = (d1 * d1 * (d2 * dh).invert() - dh * d1.invert()) * F(1, 2)
    rhs = d2 * d1.invert() * 2048 + 24
    assert lhs.coeff(0) == 24 and lhs.coeff(1) == 2048
    assert rhs.coeff(0) == 24 and rhs.coeff(1) == 2048


def test_delta_identity_negative_control():
    # perturbing 2^11 to 2^10 must break the identity
    ident = IDENT
    d1 = ident.eta_quotient(1, 14)
    d2 = ident.eta_quotient(2, 14)
    dh = ident.eta_quotient(F(1, 2), 12)
    lhs = (d1 * d1 * (d2 * dh).invert() - dh * d1.invert()) * F(1, 2)
    rhs_bad = d2 * d1.invert() * 1024 + 24
    assert (lhs - rhs_bad).truncate(10).max_residual() != 0


def test_hecke_fit_and_residual():
    (a, b, c), report = verify_hecke(40)
    assert (a, b, c) == (2048, 24, 0)
    assert report.passed and report.max_residual == 0


def test_hecke_input_expansion():
    f = parse("2^24/1^24").eta_quotient(1, 5)
    assert f.coeff(1) == 1 and f.coeff(2) == 24


def test_half_shift_relation():
    assert half_shift_relation(30).passed


def test_normalization_sweep():
    reports = normalization_reports(4)
    assert len(reports) == 180
    assert all(r.passed for r in reports)


def test_dichotomy_non_constant_for_registry():
    for name in ("2A", "6C", "46AB"):
        rec = lookup(name)
        assert dichotomy_check(rec.frame_shape, rec.c_hat_g) == "non-constant"


def test_dichotomy_rejects_wrong_constant():
    from conwaymoonshine.errors import VerificationFailure

    with pytest.raises(VerificationFailure):
        dichotomy_check(IDENT, 1)  # fixed points but a nonzero scalar
