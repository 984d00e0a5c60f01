import random

import pytest

from conwaymoonshine.cliffordcm import class_supertraces
from conwaymoonshine.errors import MembershipError
from conwaymoonshine.frameshape import parse
from conwaymoonshine.lattice import (
    LENGTH,
    apply_sign_change,
    sign_change_frameshape,
    _leech_congruences,
)


def test_golay_weight_distribution(golay):
    assert golay.weight_distribution() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_golay_no_weight_four_words(golay):
    assert all(w != 4 for w in golay.weight_distribution())


def test_golay_self_dual_generators(golay):
    for i, a in enumerate(golay.generators):
        for b in golay.generators[i:]:
            assert bin(a & b).count("1") % 2 == 0


def test_golay_membership(golay):
    for w in golay.words()[::97]:
        assert golay.contains(w)
    assert not golay.contains(0b1011)


def test_leech_gram(leech):
    assert leech.gram_determinant() == 1
    g = leech.gram()
    for i in range(LENGTH):
        assert g[i][i].denominator == 1 and g[i][i].numerator % 2 == 0


def test_leech_no_short_vectors(leech):
    for norm in (1, 2, 3):
        assert leech.shell_count(norm) == 0


def test_frame_properties(leech, frame):
    assert len(frame) == 24
    for i, v in enumerate(frame):
        assert leech.inner(v, v) == 8
        for w in frame[i + 1 :]:
            assert leech.inner(v, w) == 0
            assert leech.contains([(a - b) // 2 for a, b in zip(v, w)])


def test_sign_change_shapes(golay):
    ident, chi = sign_change_frameshape(0, golay)
    assert ident == parse("1^24") and chi == 24
    for w in golay.words():
        weight = bin(w).count("1")
        if weight == 12:
            shape, chi = sign_change_frameshape(w, golay)
            assert shape.exps == {2: 12} and chi == 0
            assert shape.fixed_points() == 12
            break
    for w in golay.words():
        if bin(w).count("1") == 8:
            shape, chi = sign_change_frameshape(w, golay)
            assert shape.exps == {1: 8, 2: 8} and chi == 8
            break


def test_sign_change_membership_error(golay):
    with pytest.raises(MembershipError):
        sign_change_frameshape(0b111, golay)


def test_sign_change_composition_matches_symmetric_difference(golay):
    rng = random.Random(17)
    words = golay.words()
    x = tuple(rng.randrange(-3, 4) for _ in range(24))
    for _ in range(200):
        c, d = rng.choice(words), rng.choice(words)
        via_product = apply_sign_change(c, apply_sign_change(d, x))
        via_xor = apply_sign_change(c ^ d, x)
        assert via_product == via_xor


def test_sign_changes_preserve_membership(golay, leech):
    rng = random.Random(23)
    words = rng.sample(list(golay.words()), 8)
    vectors = []
    for _ in range(50):
        coeffs = [rng.randrange(-2, 3) for _ in range(24)]
        v = [sum(c * row[j] for c, row in zip(coeffs, leech.basis)) for j in range(24)]
        vectors.append(tuple(v))
    for w in words:
        for v in vectors:
            assert leech.contains(apply_sign_change(w, v))
            assert _leech_congruences(list(apply_sign_change(w, v)), golay)


def test_spinor_bridge_for_dodecads(golay, lift):
    """For dodecad sign changes the three trace computations agree: the
    eigenvalue closed form, the 4096-subset oracle, and the supertrace of
    the actual lifted word (the factors 2 from the six minus-pairs are
    killed by the zeros from the six fixed pairs)."""
    count = 0
    for w in golay.words():
        if bin(w).count("1") != 12:
            continue
        shape, _ = sign_change_frameshape(w, golay)
        closed, oracle = class_supertraces(shape)
        assert closed == oracle
        word_trace = lift.word_operator(w).supertrace()
        assert word_trace == closed
        assert closed.to_rational() == 0
        count += 1
        if count >= 20:
            break
    assert count == 20


def test_octad_sign_change_word_supertrace(golay, lift):
    for w in golay.words():
        if bin(w).count("1") == 8:
            assert lift.word_operator(w).supertrace().to_rational() == 0
            break
