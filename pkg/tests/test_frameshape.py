import random
from fractions import Fraction as F

import pytest

from conwaymoonshine.classdata import registry
from conwaymoonshine.errors import ParseError
from conwaymoonshine.fockoracle import ModeSystem, TWISTED, twisted_supertrace
from conwaymoonshine.frameshape import parse
from conwaymoonshine.qseries import FracPowerSeries as S


def test_parse_table_strings():
    assert parse("2^24/1^24").exps == {2: 24, 1: -24}
    shape = parse("1^3 6^9/2^3 3^9")
    assert shape.exps == {1: 3, 6: 9, 2: -3, 3: -9}
    assert shape.degree() == 24


def test_parse_rejects_wrong_degree():
    with pytest.raises(ParseError):
        parse("1^23")


def test_parse_rejects_ambiguous_typesetting():
    # the table's undelimited "2^66^6" form is a grammar violation here
    with pytest.raises(ParseError):
        parse("2^66^6/1^63^6")


def test_parse_rejects_negative_multiplicity():
    # degree is 24 but the -1 eigenvalue would have multiplicity -1
    with pytest.raises(ParseError):
        parse("1^26/2^1")


def test_parse_error_position():
    try:
        parse("2^24/^")
    except ParseError as exc:
        assert exc.position == 5
    else:
        raise AssertionError("no error")


def test_chi():
    assert parse("1^24").chi() == 24
    assert parse("2^24/1^24").chi() == -24
    assert parse("3^12/1^12").chi() == -12


def test_negate_known_pairs():
    assert parse("1^24").negate() == parse("2^24/1^24")
    assert parse("3^12/1^12").negate() == parse("1^12.6^12/2^12.3^12")
    assert parse("5^6/1^6").negate() == parse("1^6.10^6/2^6.5^6")


def test_negate_is_involution_on_registry():
    for rec in registry():
        assert rec.frame_shape.negate().negate() == rec.frame_shape


def test_negate_negates_eigenvalues_pointwise():
    for rec in registry():
        ev = rec.frame_shape.eigenvalues()
        flipped = {(t + F(1, 2)) % 1: m for t, m in ev.items()}
        assert rec.frame_shape.negate().eigenvalues() == flipped


def test_eigenvalue_examples():
    assert parse("2^24/1^24").eigenvalues() == {F(1, 2): 24}
    assert parse("1^24").eigenvalues() == {F(0): 24}
    assert parse("3^12/1^12").eigenvalues() == {F(1, 3): 12, F(2, 3): 12}


def test_eigenvalues_closed_under_inversion_product_one():
    for rec in list(registry())[::7]:
        ev = rec.frame_shape.eigenvalues()
        assert sum(ev.values()) == 24
        total = sum(t * m for t, m in ev.items())
        assert total.denominator == 1  # product of eigenvalues is +1
        assert ev == {(1 - t) % 1: m for t, m in ev.items()}


def test_fixed_point_count_is_exponent_sum():
    for rec in registry():
        shape = rec.frame_shape
        assert shape.fixed_points() == sum(shape.exps.values()) == 0
        partner = shape.negate()
        assert partner.eigenvalues().get(F(0), 0) == partner.fixed_points()


def test_eta_quotient_delta():
    delta = parse("1^24").eta_quotient(1, 8)
    assert delta.valuation() == 1
    assert [delta.coeff(n) for n in range(1, 6)] == [1, -24, 252, -1472, 4830]


def test_eta_quotient_2a_product_form():
    f = parse("2^24/1^24").eta_quotient(1, 10)
    prod = S.monomial(1, 0, 9)
    for n in range(1, 9):
        prod = prod * (S.monomial(1, 0, 9) + S.monomial(1, n, 9))
    assert f.agrees_with((prod**24).shifted(1))


def test_eta_quotient_valuation_scaling():
    for rec in list(registry())[::11]:
        pi = rec.frame_shape
        half = pi.eta_quotient(F(1, 2), 3)
        full = pi.eta_quotient(1, 3)
        assert half.valuation() == F(1, 2) and full.valuation() == 1
        assert (half * full.invert()).valuation() == F(-1, 2)


def test_eta_quotient_matches_eigenvalue_mode_product():
    # the defining product q * prod_n prod_i (1 - eps_i q^n), computed in
    # cyclotomic arithmetic with no eta series at all
    rng = random.Random(42)
    picks = rng.sample(list(registry()), 10)
    for rec in picks:
        shape = rec.frame_shape
        ms = ModeSystem.from_shape(shape, TWISTED, 4)
        oracle = twisted_supertrace(ms, 1)
        assert shape.eta_quotient(1, 5).agrees_with(oracle)


def test_canonical_string_round_trip():
    for rec in registry():
        assert parse(str(rec.frame_shape)) == rec.frame_shape


def test_json_form():
    assert parse("2^24/1^24").to_json() == [[1, -24], [2, 24]]
