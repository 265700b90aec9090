"""
Finitely supported real sequences (the space R^infinity).

A ``FinVec`` stores the dense prefix of its coefficients with trailing zeros
stripped, so the zero-padding inclusions R^i -> R^j are the identity on stored
values and equality of vectors is equality of stored tuples. Coordinates are
numbered from 1 in every public helper.
"""

from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Sequence, Tuple

from ..errors import AmbientTooSmall
from ..utils.scalars import Scalar, ScalarMode, is_exact


@dataclass(frozen=True)
class FinVec:
    coeffs: Tuple[Scalar, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coord(self, k: int) -> Scalar:
        """The k-th coordinate, k >= 1; zero beyond the support."""
        if k < 1:
            raise IndexError(f"Coordinates are numbered from 1, got {k}")
        return self.coeffs[k - 1] if k <= len(self.coeffs) else 0

    def padded(self, d: int) -> Tuple[Scalar, ...]:
        """The first d coordinates as a tuple of length d."""
        if self.degree > d:
            raise AmbientTooSmall(f"Vector of degree {self.degree} does not fit in R^{d}")
        return self.coeffs + (0,) * (d - self.degree)

    def __add__(self, other: "FinVec") -> "FinVec":
        return add(self, other)

    def __sub__(self, other: "FinVec") -> "FinVec":
        return add(self, scale(-1, other))

    def __neg__(self) -> "FinVec":
        return scale(-1, self)

    def __rmul__(self, c: Scalar) -> "FinVec":
        return scale(c, self)

    def __truediv__(self, c: Scalar) -> "FinVec":
        return FinVec(tuple(x / c for x in self.coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"FinVec({', '.join(str(c) for c in self.coeffs)})"


ZERO = FinVec()


def make(coeffs: Iterable[Scalar]) -> FinVec:
    return FinVec(tuple(coeffs))


def make_in(coeffs: Iterable, mode: ScalarMode) -> FinVec:
    """Build a vector after coercing every entry to ``mode``."""
    return FinVec(tuple(mode.coerce(c) for c in coeffs))


def basis(k: int, mode: ScalarMode = ScalarMode.RATIONAL) -> FinVec:
    """The standard basis vector e_k (k >= 1)."""
    if k < 1:
        raise IndexError(f"Basis vectors are numbered from 1, got {k}")
    return FinVec((mode.coerce(0),) * (k - 1) + (mode.coerce(1),))


def add(x: FinVec, y: FinVec) -> FinVec:
    return FinVec(tuple(a + b for a, b in zip_longest(x.coeffs, y.coeffs, fillvalue=0)))


def scale(c: Scalar, x: FinVec) -> FinVec:
    return FinVec(tuple(c * a for a in x.coeffs))


def weak_inner(x: FinVec, y: FinVec) -> Scalar:
    """<x, y> = sum_k x_k y_k over the common support."""
    return sum((a * b for a, b in zip(x.coeffs, y.coeffs)), 0)


def norm_sq(x: FinVec) -> Scalar:
    return weak_inner(x, x)


def include(x: FinVec, d: int) -> FinVec:
    """
    The zero-padding inclusion into R^d.

    Stored vectors are already zero padded, so this only checks that x lives
    in R^d and hands it back.

    Raises:
        AmbientTooSmall: If degree(x) > d.
    """
    if x.degree > d:
        raise AmbientTooSmall(f"Cannot include a vector of degree {x.degree} into R^{d}")
    return x


def truncate(x: FinVec, d: int) -> FinVec:
    """Keep the first d coordinates."""
    return FinVec(x.coeffs[:d])


def shift(x: FinVec) -> FinVec:
    """Insert a zero first coordinate: R^d -> {e_1}^perp in R^(d+1)."""
    if x.is_zero():
        return x
    return FinVec((0 * x.coeffs[0],) + x.coeffs)


def unshift(x: FinVec) -> FinVec:
    """Drop the first coordinate."""
    return FinVec(x.coeffs[1:])


def to_mode(x: FinVec, mode: ScalarMode) -> FinVec:
    return FinVec(tuple(mode.coerce(c) for c in x.coeffs))


def is_exact_vec(x: FinVec) -> bool:
    return all(is_exact(c) for c in x.coeffs)


def max_abs_diff(x: FinVec, y: FinVec) -> Scalar:
    """Largest coordinate difference; exact when both inputs are rational."""
    return max((abs(a - b) for a, b in zip_longest(x.coeffs, y.coeffs, fillvalue=0)), default=0)


def from_sequence(values: Sequence) -> FinVec:
    """Build a vector from any sequence of numbers (numpy arrays included)."""
    return FinVec(tuple(v.item() if hasattr(v, "item") else v for v in values))
