"""Scalar modes: exact rationals or 64-bit floats."""

from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Any, Union

import numpy as np

from ..config import DEFAULT_TOL

Scalar = Union[Fraction, float]


class ScalarMode(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"

    def coerce(self, value: Any) -> Scalar:
        """
        Convert a number (int, Fraction, float or a literal such as "2/3") to
        this mode's scalar type.
        """
        if self is ScalarMode.RATIONAL:
            return Fraction(value)
        if isinstance(value, str):
            return float(Fraction(value))
        return float(value)


def is_exact(value: Any) -> bool:
    return isinstance(value, Rational)


def is_zero(value: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """Exact test for rationals, ``|value| <= tol`` for floats."""
    if is_exact(value):
        return value == 0
    return abs(value) <= tol


def random_rational(rng: np.random.Generator, bound: int = 3, max_den: int = 4) -> Fraction:
    """A rational p/q with |p/q| <= bound and 1 <= q <= max_den."""
    den = int(rng.integers(1, max_den + 1))
    num = int(rng.integers(-bound * den, bound * den + 1))
    return Fraction(num, den)


def random_scalar(rng: np.random.Generator, mode: ScalarMode, bound: int = 3) -> Scalar:
    if mode is ScalarMode.RATIONAL:
        return random_rational(rng, bound)
    return float(rng.uniform(-bound, bound))
