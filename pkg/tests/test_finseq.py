from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from limit_bundle.errors import AmbientTooSmall
from limit_bundle.geometry import finseq
from limit_bundle.geometry.finseq import FinVec
from limit_bundle.utils.scalars import ScalarMode

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)
vectors = st.lists(fractions, max_size=7).map(finseq.make)


def test_weak_inner_over_common_support():
    x = finseq.make_in([1, 2, 3], ScalarMode.RATIONAL)
    y = finseq.make_in([4, 5], ScalarMode.RATIONAL)
    assert finseq.weak_inner(x, y) == 14


def test_trailing_zeros_are_stripped():
    x = FinVec((Fraction(1), Fraction(0), Fraction(0)))
    assert x == FinVec((Fraction(1),))
    assert x.degree == 1
    assert FinVec((0, 0)).is_zero()


def test_cancellation_lowers_the_degree():
    x = finseq.make([1, 2]) + finseq.make([0, -2])
    assert x == finseq.make([1])
    assert x.degree == 1


def test_include_is_the_identity_on_stored_values():
    x = finseq.make([1, 2])
    assert finseq.include(x, 4) == x
    assert x.padded(4) == (1, 2, 0, 0)


def test_include_rejects_small_ambient():
    with pytest.raises(AmbientTooSmall):
        finseq.include(finseq.make([1, 2, 3]), 2)
    with pytest.raises(AmbientTooSmall):
        finseq.make([1, 2, 3]).padded(2)


def test_coordinates_are_numbered_from_one():
    x = finseq.make([7, 8])
    assert x.coord(1) == 7
    assert x.coord(5) == 0
    with pytest.raises(IndexError):
        x.coord(0)
    with pytest.raises(IndexError):
        finseq.basis(0)


def test_basis_vector():
    assert finseq.basis(3) == FinVec((Fraction(0), Fraction(0), Fraction(1)))
    assert finseq.basis(2, ScalarMode.FLOAT).coeffs == (0.0, 1.0)


def test_shift_and_unshift():
    x = finseq.make([1, 2])
    assert finseq.shift(x).coeffs == (0, 1, 2)
    assert finseq.unshift(finseq.shift(x)) == x
    assert finseq.shift(FinVec()).is_zero()


def test_to_mode_converts_every_entry():
    x = finseq.to_mode(finseq.make([Fraction(1, 2), 3]), ScalarMode.FLOAT)
    assert x.coeffs == (0.5, 3.0)
    assert not finseq.is_exact_vec(x)


def test_max_abs_diff_pads_with_zeros():
    assert finseq.max_abs_diff(finseq.make([1, 2, 3]), finseq.make([1])) == 3
    assert finseq.max_abs_diff(FinVec(), FinVec()) == 0


@given(vectors, vectors)
def test_weak_inner_is_symmetric(x, y):
    assert finseq.weak_inner(x, y) == finseq.weak_inner(y, x)


@given(vectors, vectors, vectors, fractions)
def test_weak_inner_is_bilinear(x, y, z, c):
    assert finseq.weak_inner(x + c * y, z) == finseq.weak_inner(x, z) + c * finseq.weak_inner(y, z)


@given(vectors, vectors, st.integers(min_value=0, max_value=4))
def test_inclusion_preserves_the_inner_product(x, y, extra):
    d = max(x.degree, y.degree) + extra
    assert finseq.weak_inner(finseq.include(x, d), finseq.include(y, d)) == finseq.weak_inner(x, y)


@given(vectors)
def test_stored_vectors_are_canonical(x):
    assert not x.coeffs or x.coeffs[-1] != 0
    assert x - x == FinVec()
