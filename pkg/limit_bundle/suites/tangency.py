"""Intrinsic tangency of chart tangent vectors and of chart changes."""

import logging

from ..config import registry
from ..errors import LimitBundleError
from ..geometry import finseq, tangent
from .sampling import foot_in, random_rep, relative_residual, vec_residual

logger = logging.getLogger(__name__)


@registry.suite("tangency", "to_intrinsic lands in {<x, v> = 0}; chart changes keep the tangent vector and commute with Phi_ij")
def tangency_suite(ctx) -> None:
    tower = ctx.tower
    bound = None if ctx.exact else 1e3
    for _, rng in ctx.trials():
        i, j = ctx.level_pair(rng)
        rep = random_rep(ctx, rng, i)
        intrinsic = tangent.to_intrinsic(rep)
        scale = max([1] + [abs(c) for c in intrinsic.vector])
        ctx.check("intrinsic_tangency").residual(
            relative_residual(abs(tower.normal_component(intrinsic.point, intrinsic.vector)), scale), rep
        )

        still = tangent.th(tower, rep.family, i, rep.base, finseq.ZERO)
        ctx.check("zero_velocity").expect(tangent.to_intrinsic(still).vector.is_zero(), still)

        other = ctx.family(rng, i)
        foot = foot_in(ctx, rng, i, [rep.family, other], max_coord=bound)
        if foot is None:
            continue
        rep = tangent.th(tower, rep.family, i, rep.family.forward(i, foot), rep.vel)
        sample = (rep, other.key, j)
        try:
            changed = tangent.chart_change(rep, other)
            before, after = tangent.to_intrinsic(rep), tangent.to_intrinsic(changed)
            scale = max([1] + [abs(c) for c in before.vector])
            ctx.check("chart_change_class").residual(
                relative_residual(
                    max(vec_residual(before.point, after.point), vec_residual(before.vector, after.vector)), scale
                ),
                sample,
            )

            left = tangent.chart_change(tangent.phi_T(rep, j), other)
            right = tangent.phi_T(changed, j)
            scale = max([1] + [abs(c) for c in right.vel])
            ctx.check("chart_change_naturality").residual(
                relative_residual(max(vec_residual(left.base, right.base), vec_residual(left.vel, right.vel)), scale),
                sample,
            )
        except LimitBundleError as e:
            ctx.check("chart_change_class").error(e, sample)
