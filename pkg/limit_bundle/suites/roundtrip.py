"""lim TM_i against T(lim M_i): both descriptions of the tangent bundle agree on samples."""

import logging

from ..config import registry
from ..errors import LimitBundleError
from ..geometry import dirlim, tangent
from .sampling import random_rep, random_tangent, vec_residual

logger = logging.getLogger(__name__)

# Levels above the construction level visited per sample
ROUNDTRIP_SPAN = 2


@registry.suite("roundtrip", "lim TM_i and T(lim M_i) biject on samples; intrinsic round trips and canonical levels")
def roundtrip_suite(ctx) -> None:
    tower = ctx.tower
    system = tangent.tangent_system(tower, ctx.tol)
    for _, rng in ctx.trials():
        i, j = ctx.level_pair(rng)
        rep = random_rep(ctx, rng, i)
        intrinsic = random_tangent(ctx, rng, ctx.level(rng))

        try:
            report = tangent.bundle_roundtrip(tower, [rep], [intrinsic], ctx.tol, span=ROUNDTRIP_SPAN)
            failure = report.first_failure or {}
            ctx.check("bijection").expect(
                report.ok, (rep, intrinsic), **{key: value for key, value in failure.items() if key != "sample"}
            )
        except LimitBundleError as e:
            ctx.check("bijection").error(e, (rep, intrinsic))

        try:
            n = tower.tangent_level(intrinsic.point, intrinsic.vector)
            family = tower.chart_family(intrinsic.point, ctx.mode)
            ctx.check("support_level").expect(
                max(intrinsic.point.degree, intrinsic.vector.degree) <= tower.ambient_dim(n), intrinsic, level=n
            )
            written = tangent.from_intrinsic(tower, intrinsic, family, max(n, family.min_level), ctx.tol)
            back = tangent.to_intrinsic(written)
            ctx.check("intrinsic_roundtrip").residual(
                max(vec_residual(back.point, intrinsic.point), vec_residual(back.vector, intrinsic.vector)), intrinsic
            )
        except LimitBundleError as e:
            ctx.check("intrinsic_roundtrip").error(e, intrinsic)

        try:
            again = tangent.from_intrinsic(tower, tangent.to_intrinsic(rep), rep.family, rep.level, ctx.tol)
            ctx.check("rep_roundtrip").residual(
                max(vec_residual(again.base, rep.base), vec_residual(again.vel, rep.vel)), rep
            )

            element = dirlim.inject(system, j, tangent.phi_T(rep, j))
            canonical = dirlim.canonicalize(element)
            ctx.check("canonical_level").expect(
                canonical.level <= i and dirlim.equivalent(canonical, element),
                rep,
                level=canonical.level,
            )
        except LimitBundleError as e:
            ctx.check("rep_roundtrip").error(e, rep)
