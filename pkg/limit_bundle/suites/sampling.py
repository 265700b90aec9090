"""Random inputs shared by the property suites."""

from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from ..geometry import finseq, glinf, tangent
from ..geometry.finseq import FinVec
from ..geometry.tower import ChartFamily
from ..utils.scalars import Scalar, random_scalar

if TYPE_CHECKING:
    from ..harness import SuiteContext

# Resampling budget for points that must avoid excluded chart points
FOOT_ATTEMPTS = 32


def random_vector(ctx: "SuiteContext", rng: np.random.Generator, dim: int, bound: int = 2) -> FinVec:
    return FinVec(tuple(random_scalar(rng, ctx.mode, bound) for _ in range(dim)))


def random_rep(
    ctx: "SuiteContext",
    rng: np.random.Generator,
    level: int,
    family: Optional[ChartFamily] = None,
) -> tangent.TangentRep:
    """A tangent rep at ``level`` with random chart coordinates."""
    if family is None:
        family = ctx.family(rng, level)
    ybar = ctx.tower.random_coordinates(level, rng, ctx.mode)
    vbar = ctx.tower.random_coordinates(level, rng, ctx.mode)
    return tangent.th(ctx.tower, family, level, ybar, vbar)


def foot_in(
    ctx: "SuiteContext",
    rng: np.random.Generator,
    level: int,
    families: Sequence[ChartFamily],
    max_coord: Optional[float] = None,
) -> Optional[FinVec]:
    """
    A random point of M_level inside every chart of ``families``.

    With ``max_coord`` the point's chart coordinates must also stay below that
    bound in every family, which keeps it away from the excluded points.
    Returns None when no such point turns up within FOOT_ATTEMPTS draws.
    """
    for _ in range(FOOT_ATTEMPTS):
        x = ctx.tower.random_point(level, rng, ctx.mode)
        if not all(family.contains(x) for family in families):
            continue
        if max_coord is not None:
            coords = [family.forward(level, x) for family in families]
            if any(abs(float(c)) > max_coord for ybar in coords for c in ybar):
                continue
        return x
    return None


def random_tangent(ctx: "SuiteContext", rng: np.random.Generator, level: int) -> tangent.IntrinsicTangent:
    """A random pair (x, v) tangent to M_level."""
    x = ctx.tower.random_point(level, rng, ctx.mode)
    w = random_vector(ctx, rng, ctx.tower.ambient_dim(level))
    return tangent.IntrinsicTangent(x, ctx.tower.tangent_projection(x, w))


def vec_residual(x: FinVec, y: FinVec) -> Scalar:
    return finseq.max_abs_diff(x, y)


def relative_residual(difference: Scalar, scale: Scalar) -> Scalar:
    """``difference / max(1, scale)``; a zero difference stays exactly zero."""
    if scale > 1 and difference != 0:
        return difference / scale
    return difference


def block_magnitude(g: glinf.GLInfElement) -> Scalar:
    """Largest entry of the stored block, at least 1."""
    return max([1] + [abs(entry) for row in g.block for entry in row])
