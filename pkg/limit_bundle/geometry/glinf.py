"""
The group GL(infinity, R) = lim GL(R^n).

An element is an invertible matrix that equals the identity outside a finite
leading block. Elements are stored with the smallest such block, so the
embeddings GL(R^n) -> GL(R^m) are the identity on stored values and equality
is decidable by comparing blocks.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..config import SINGULAR_RTOL
from ..errors import AmbientTooSmall, NumericallySingular, Singular
from ..utils.scalars import Scalar, ScalarMode, is_exact, random_scalar
from .finseq import FinVec

logger = logging.getLogger(__name__)

Block = Tuple[Tuple[Scalar, ...], ...]


@dataclass(frozen=True)
class GLInfElement:
    block: Block = ()

    @property
    def size(self) -> int:
        return len(self.block)

    @property
    def exact(self) -> bool:
        return all(is_exact(entry) for row in self.block for entry in row)

    def __matmul__(self, other: "GLInfElement") -> "GLInfElement":
        return compose(self, other)

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(entry) for entry in row) for row in self.block)
        return f"GLInfElement([{rows}])"


IDENTITY = GLInfElement()


def identity() -> GLInfElement:
    return IDENTITY


def _is_identity_tail(block: List[List[Scalar]], k: int) -> bool:
    """Row k and column k of ``block`` both equal e_k."""
    n = len(block)
    for t in range(n):
        expected = 1 if t == k else 0
        if block[k][t] != expected or block[t][k] != expected:
            return False
    return True


def _canonical(block: Sequence[Sequence[Scalar]]) -> GLInfElement:
    rows = [list(row) for row in block]
    n = len(rows)
    while n and _is_identity_tail(rows, n - 1):
        n -= 1
        rows = [row[:n] for row in rows[:n]]
    return GLInfElement(tuple(tuple(row) for row in rows))


def _check_square(m: Sequence[Sequence[Scalar]]) -> None:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError(f"Block must be square, got a row of length {len(row)} in a {n}-row matrix")


def _exact_gauss_jordan(block: Sequence[Sequence[Scalar]]) -> Tuple[List[List[Fraction]], Fraction]:
    """
    Invert a rational block by Gauss-Jordan elimination with full pivoting.

    Returns:
        The inverse and the determinant.

    Raises:
        Singular: If the determinant is zero.
    """
    n = len(block)
    a = [[Fraction(entry) for entry in row] for row in block]
    inv = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    perm = list(range(n))
    det = Fraction(1)

    for k in range(n):
        # Largest remaining entry
        best, pr, pc = Fraction(0), -1, -1
        for r in range(k, n):
            for c in range(k, n):
                if abs(a[r][c]) > best:
                    best, pr, pc = abs(a[r][c]), r, c
        if pr < 0:
            raise Singular("Block is singular (determinant 0)")
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            inv[k], inv[pr] = inv[pr], inv[k]
            det = -det
        if pc != k:
            for row in a:
                row[k], row[pc] = row[pc], row[k]
            perm[k], perm[pc] = perm[pc], perm[k]
            det = -det

        pivot = a[k][k]
        det *= pivot
        a[k] = [entry / pivot for entry in a[k]]
        inv[k] = [entry / pivot for entry in inv[k]]
        for r in range(n):
            factor = a[r][k]
            if r == k or factor == 0:
                continue
            a[r] = [x - factor * y for x, y in zip(a[r], a[k])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[k])]

    # Column swaps permuted the unknowns; undo them on the rows of the inverse.
    result: List[List[Fraction]] = [[]] * n
    for k in range(n):
        result[perm[k]] = inv[k]
    return result, det


def _float_gauss_jordan(block: Sequence[Sequence[Scalar]]) -> np.ndarray:
    """
    Invert a float block with partial pivoting.

    Raises:
        NumericallySingular: If a pivot is below SINGULAR_RTOL * max|entry|.
    """
    a = np.array(block, dtype=float)
    n = a.shape[0]
    inv = np.eye(n)
    threshold = SINGULAR_RTOL * (np.abs(a).max() if n else 0.0)

    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= threshold:
            raise NumericallySingular(f"Pivot {a[p, k]:.3e} in column {k + 1} is below {threshold:.3e}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            inv[[k, p]] = inv[[p, k]]
        pivot = a[k, k]
        a[k] /= pivot
        inv[k] /= pivot
        factors = a[:, k].copy()
        factors[k] = 0.0
        a -= np.outer(factors, a[k])
        inv -= np.outer(factors, inv[k])
    return inv


def _is_exact_block(block: Sequence[Sequence[Scalar]]) -> bool:
    return all(is_exact(entry) for row in block for entry in row)


def from_block(m: Sequence[Sequence[Scalar]]) -> GLInfElement:
    """
    Build the canonical element whose leading block is ``m``.

    Args:
        m: Square matrix of scalars (all rational, or floats).

    Returns:
        GLInfElement: Canonical element with identity rows/columns trimmed.

    Raises:
        ValueError: If m is not square.
        Singular: If m is singular (NumericallySingular in float mode).
    """
    _check_square(m)
    if _is_exact_block(m):
        _exact_gauss_jordan(m)
    else:
        _float_gauss_jordan(m)
    return _canonical(m)


def block_at(g: GLInfElement, n: int) -> Block:
    """The element as an explicit n x n matrix (identity padded)."""
    if g.size > n:
        raise AmbientTooSmall(f"Element with block size {g.size} does not fit in GL(R^{n})")
    rows = []
    for r in range(n):
        if r < g.size:
            rows.append(g.block[r] + tuple(0 for _ in range(n - g.size)))
        else:
            rows.append(tuple(1 if c == r else 0 for c in range(n)))
    return tuple(rows)


def embed(g: GLInfElement, m: int) -> GLInfElement:
    """
    The injection GL(R^n) -> GL(R^m); the identity on canonical elements.

    Raises:
        AmbientTooSmall: If the block of g is larger than m.
    """
    if g.size > m:
        raise AmbientTooSmall(f"Cannot embed an element of block size {g.size} into GL(R^{m})")
    return g


def _matmul(a: Block, b: Block) -> List[List[Scalar]]:
    columns = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in columns] for row in a]


def compose(g: GLInfElement, h: GLInfElement) -> GLInfElement:
    """The product g o h, computed at block size max(n_g, n_h)."""
    n = max(g.size, h.size)
    if n == 0:
        return IDENTITY
    return _canonical(_matmul(block_at(g, n), block_at(h, n)))


def inverse(g: GLInfElement) -> GLInfElement:
    """
    The inverse element.

    Raises:
        NumericallySingular: Float blocks only, when a pivot underflows.
    """
    if g.size == 0:
        return IDENTITY
    if g.exact:
        inv, _ = _exact_gauss_jordan(g.block)
        return _canonical(inv)
    return _canonical(_float_gauss_jordan(g.block).tolist())


def determinant(g: GLInfElement) -> Scalar:
    if g.size == 0:
        return Fraction(1)
    if g.exact:
        return _exact_gauss_jordan(g.block)[1]
    return float(np.linalg.det(np.array(g.block, dtype=float)))


def apply(g: GLInfElement, v: FinVec) -> FinVec:
    """Act on v: the block hits the first n coordinates, the rest pass through."""
    n = g.size
    if n == 0:
        return v
    head = v.padded(max(n, v.degree))[:n]
    image = tuple(sum((x * y for x, y in zip(row, head)), 0) for row in g.block)
    return FinVec(image + v.coeffs[n:])


def from_columns(columns: Sequence[FinVec], n: int) -> GLInfElement:
    """
    The element whose first n columns are the given vectors (each of degree <= n).

    Raises:
        Singular: If the assembled block is singular.
    """
    block = [[columns[c].coord(r + 1) for c in range(n)] for r in range(n)]
    return from_block(block)


def max_abs_diff(g: GLInfElement, h: GLInfElement) -> Scalar:
    n = max(g.size, h.size)
    a, b = block_at(g, n), block_at(h, n)
    return max((abs(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)), default=0)


def random_element(rng: np.random.Generator, max_size: int, mode: ScalarMode = ScalarMode.RATIONAL) -> GLInfElement:
    """A random invertible element with block size at most ``max_size``."""
    while True:
        n = int(rng.integers(1, max_size + 1))
        block = [[random_scalar(rng, mode, bound=2) for _ in range(n)] for _ in range(n)]
        try:
            return from_block(block)
        except Singular:
            logger.debug(f"Rejected singular random block of size {n}")
