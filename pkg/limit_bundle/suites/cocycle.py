"""Fiber transition functions T_xy and their cocycle identities."""

import logging
from fractions import Fraction

from ..config import registry
from ..errors import LimitBundleError
from ..geometry import finseq, glinf, tangent
from ..geometry.tower import Sign, StereoChart, StereoChartFamily
from .sampling import block_magnitude, foot_in, relative_residual

logger = logging.getLogger(__name__)

# Float feet keep their chart coordinates below this bound
FLOAT_COORD_BOUND = 1e3


def antipodal_jacobian(ybar: finseq.FinVec, d: int) -> glinf.GLInfElement:
    """(I - 2 y y^T / <y, y>) / <y, y>, the derivative of y -> y / <y, y>."""
    s = finseq.norm_sq(ybar)
    y = ybar.padded(d)
    one = Fraction(1) if finseq.is_exact_vec(ybar) else 1.0
    block = [[((one if r == c else 0 * one) - 2 * y[r] * y[c] / s) / s for c in range(d)] for r in range(d)]
    return glinf.from_block(block)


@registry.suite(
    "cocycle",
    "Fiber transitions: T_BC o T_AB = T_AC, T_AA = Id, inverse pairs, level compatibility, antipodal closed form",
    modes=("float", "rational"),
)
def cocycle_suite(ctx) -> None:
    atlas = ctx.tower.atlas()
    lowest = max(family.min_level for family in atlas)
    bound = None if ctx.exact else FLOAT_COORD_BOUND
    a, b, c = atlas

    for _, rng in ctx.trials():
        level = ctx.level(rng, lowest)
        d = ctx.tower.dim(level)
        # Some atlas families only start above this level
        foot = foot_in(ctx, rng, level, atlas, max_coord=bound) if level >= lowest else None
        if foot is None:
            logger.debug(f"No foot in the triple overlap at level {level}")
        else:
            sample = (level, foot)
            try:
                t_ab = tangent.transition_fiber(ctx.tower, a, b, foot, level)
                t_bc = tangent.transition_fiber(ctx.tower, b, c, foot, level)
                t_ac = tangent.transition_fiber(ctx.tower, a, c, foot, level)
                t_ba = tangent.transition_fiber(ctx.tower, b, a, foot, level)
                identity = glinf.identity()

                scale = block_magnitude(t_ab) * block_magnitude(t_bc) * d
                ctx.check("cocycle").residual(relative_residual(glinf.max_abs_diff(t_bc @ t_ab, t_ac), scale), sample)

                ctx.check("identity").expect(
                    tangent.transition_fiber(ctx.tower, a, a, foot, level) == identity, sample
                )

                scale = block_magnitude(t_ab) * block_magnitude(t_ba) * d
                ctx.check("inverse_pair").residual(relative_residual(glinf.max_abs_diff(t_ba @ t_ab, identity), scale), sample)

                w = ctx.tower.random_coordinates(level, rng, ctx.mode)
                rep = tangent.th(ctx.tower, a, level, a.forward(level, foot), w)
                _, fiber = tangent.trivialize(rep, b)
                scale = block_magnitude(t_ab) * max([1] + [abs(x) for x in w]) * d
                ctx.check("fiber_transport").residual(
                    relative_residual(finseq.max_abs_diff(fiber, glinf.apply(t_ab, w)), scale), (level, foot, w)
                )
            except LimitBundleError as e:
                ctx.check("cocycle").error(e, sample)

        # T^j o lambda_ij = lambda_ij o T^i on the image of level i
        i, j = ctx.level_pair(rng, lowest)
        source, target = ctx.family(rng, i), ctx.family(rng, i)
        foot = foot_in(ctx, rng, i, [source, target], max_coord=bound)
        if foot is not None:
            w = ctx.tower.random_coordinates(i, rng, ctx.mode)
            sample = (source.key, target.key, i, j, foot, w)
            try:
                t_i = tangent.transition_fiber(ctx.tower, source, target, foot, i)
                t_j = tangent.transition_fiber(ctx.tower, source, target, foot, j)
                left = glinf.apply(t_j, ctx.tower.coordinate_bond(i, j, w))
                right = ctx.tower.coordinate_bond(i, j, glinf.apply(t_i, w))
                scale = block_magnitude(t_j) * max([1] + [abs(x) for x in w]) * ctx.tower.dim(j)
                ctx.check("level_compatibility").residual(relative_residual(finseq.max_abs_diff(left, right), scale), sample)
            except LimitBundleError as e:
                ctx.check("level_compatibility").error(e, sample)

        # (a, +) -> (a, -) is y -> y / <y, y> in coordinates
        plus = ctx.family(rng, level)
        if isinstance(plus, StereoChartFamily):
            minus = StereoChartFamily(StereoChart(plus.chart.pole, Sign.MINUS))
            foot = foot_in(ctx, rng, level, [plus, minus], max_coord=bound)
            if foot is not None:
                sample = (plus.key, level, foot)
                try:
                    ybar = plus.forward(level, foot)
                    fiber = tangent.transition_fiber(ctx.tower, plus, minus, foot, level)
                    expected = antipodal_jacobian(ybar, d)
                    ctx.check("antipodal_closed_form").residual(
                        relative_residual(glinf.max_abs_diff(fiber, expected), block_magnitude(expected)), sample
                    )
                except LimitBundleError as e:
                    ctx.check("antipodal_closed_form").error(e, sample)
