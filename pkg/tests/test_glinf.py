from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from limit_bundle.errors import AmbientTooSmall, NumericallySingular, Singular
from limit_bundle.geometry import finseq, glinf
from limit_bundle.utils.scalars import ScalarMode

entries = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def elements(draw, max_size=4):
    """Strictly diagonally dominant blocks, hence invertible."""
    n = draw(st.integers(min_value=1, max_value=max_size))
    block = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    for r in range(n):
        block[r][r] += signs[r] * (3 * n + 1)
    return glinf.from_block(block)


ROTATION = [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]


def test_rotation_acts_on_the_leading_block():
    g = glinf.from_block(ROTATION)
    v = finseq.make([Fraction(1), Fraction(0), Fraction(7)])
    assert glinf.apply(g, v) == finseq.make([0, 1, 7])


def test_identity_pattern_is_trimmed():
    padded = [[Fraction(2), 0, 0], [0, 1, 0], [0, 0, 1]]
    g = glinf.from_block(padded)
    assert g.size == 1
    assert g == glinf.from_block([[Fraction(2)]])
    assert glinf.from_block([[Fraction(1), 0], [0, Fraction(1)]]) == glinf.identity()


def test_block_at_pads_with_the_identity():
    g = glinf.from_block(ROTATION)
    assert glinf.block_at(g, 3) == ((0, -1, 0), (1, 0, 0), (0, 0, 1))
    with pytest.raises(AmbientTooSmall):
        glinf.block_at(g, 1)
    with pytest.raises(AmbientTooSmall):
        glinf.embed(g, 1)
    assert glinf.embed(g, 5) == g


def test_singular_blocks_are_rejected():
    with pytest.raises(Singular):
        glinf.from_block([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    with pytest.raises(NumericallySingular):
        glinf.from_block([[1.0, 2.0], [2.0, 4.0]])


def test_non_square_blocks_are_rejected():
    with pytest.raises(ValueError):
        glinf.from_block([[Fraction(1), Fraction(2)]])


def test_exact_inverse_needs_pivoting():
    g = glinf.from_block([[Fraction(0), Fraction(2), Fraction(0)], [Fraction(0), Fraction(0), Fraction(3)], [Fraction(5), Fraction(0), Fraction(0)]])
    g_inv = glinf.inverse(g)
    assert glinf.compose(g, g_inv) == glinf.identity()
    assert glinf.determinant(g) == 30


def test_float_inverse_matches_numpy():
    block = [[4.0, 1.0, 0.5], [1.0, 3.0, 0.0], [0.5, 0.0, 2.0]]
    g_inv = glinf.inverse(glinf.from_block(block))
    assert np.allclose(np.array(glinf.block_at(g_inv, 3), dtype=float), np.linalg.inv(block))


def test_determinant_of_the_identity():
    assert glinf.determinant(glinf.identity()) == 1


def test_random_elements_are_invertible(rng):
    for mode in ScalarMode:
        g = glinf.random_element(rng, 5, mode)
        assert glinf.determinant(g) != 0
        glinf.inverse(g)


@given(elements(), elements(), elements())
def test_associativity(g, h, k):
    assert glinf.compose(glinf.compose(g, h), k) == glinf.compose(g, glinf.compose(h, k))


@given(elements())
def test_identity_and_inverse(g):
    e = glinf.identity()
    assert glinf.compose(g, e) == g
    assert glinf.compose(e, g) == g
    assert glinf.compose(g, glinf.inverse(g)) == e
    assert glinf.compose(glinf.inverse(g), g) == e


@given(elements(), elements())
def test_determinant_is_multiplicative(g, h):
    assert glinf.determinant(g @ h) == glinf.determinant(g) * glinf.determinant(h)


@given(elements(), elements(), st.lists(entries, max_size=6))
def test_action_is_compatible_with_composition(g, h, coeffs):
    v = finseq.make(coeffs)
    assert glinf.apply(g @ h, v) == glinf.apply(g, glinf.apply(h, v))


@given(elements(), st.integers(min_value=0, max_value=3))
def test_canonical_form_is_independent_of_the_padding(g, extra):
    assert glinf.from_block(glinf.block_at(g, g.size + extra)) == g
