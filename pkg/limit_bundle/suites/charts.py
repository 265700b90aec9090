"""Chart compatibility and round trips of the tower atlas."""

import logging

from ..config import registry
from ..errors import LimitBundleError, OutsideChartDomain
from ..geometry import finseq, tower
from ..geometry.tower import Sign, SpherePoint, StereoChart, StereoChartFamily
from .sampling import foot_in, relative_residual, vec_residual

logger = logging.getLogger(__name__)

# Residual bound for the float sphere sampler
SPHERE_SAMPLER_TOL = 1e-12


def _ambient_checks(ctx, family: StereoChartFamily, x) -> None:
    """Round trips of u_+ and u_- and the antipodal transition, in ambient coordinates."""
    chart = family.chart
    pole = chart.pole.coords
    point = SpherePoint(x)
    sample = (str(chart), x)

    y = tower.u_plus(chart, point)
    ctx.check("u_plus_roundtrip").residual(vec_residual(tower.u_plus_inv(chart, y).coords, x), sample)
    ctx.check("codomain_perp").residual(abs(finseq.weak_inner(y, pole)), sample)

    try:
        y_minus = tower.u_minus(chart, point)
    except OutsideChartDomain:
        logger.debug(f"Skipping u_- checks at the antipode of {chart}")
        return
    ctx.check("u_minus_roundtrip").residual(vec_residual(tower.u_minus_inv(chart, y_minus).coords, x), sample)
    ctx.check("codomain_perp").residual(abs(finseq.weak_inner(y_minus, pole)), sample)

    minus = StereoChart(chart.pole, Sign.MINUS)
    plus = StereoChart(chart.pole, Sign.PLUS)
    if y.is_zero():
        return
    try:
        transported = tower.transition(plus, minus, y)
        expected = tower.antipodal_transition(y)
        scale = max(abs(c) for c in expected)
        ctx.check("antipodal_transition").residual(relative_residual(vec_residual(transported, expected), scale), sample)
    except LimitBundleError as e:
        ctx.check("antipodal_transition").error(e, sample)


@registry.suite("charts", "Chart compatibility h_j o lambda_ij = phi_ij o h_i, chart round trips and transitions")
def charts_suite(ctx) -> None:
    atlas = ctx.tower.atlas()
    top = ctx.config.i_max
    sphere = all(isinstance(family, StereoChartFamily) for family in atlas)

    for _, rng in ctx.trials():
        i, j = ctx.level_pair(rng)
        k = int(rng.integers(j, top + 1))
        family = ctx.family(rng, i)
        ybar = ctx.tower.random_coordinates(i, rng, ctx.mode)
        try:
            left, right = tower.chart_compatibility(ctx.tower, family, i, j, ybar)
            ctx.check("compatibility").residual(vec_residual(left, right), (family.key, i, j, ybar))
        except LimitBundleError as e:
            ctx.check("compatibility").error(e, (family.key, i, j, ybar))

        back = family.forward(i, family.inverse(i, ybar))
        ctx.check("coordinate_roundtrip").residual(vec_residual(back, ybar), (family.key, i, ybar))

        x = foot_in(ctx, rng, i, [family])
        if x is not None:
            ctx.check("point_roundtrip").residual(
                vec_residual(family.inverse(i, family.forward(i, x)), x), (family.key, i, x)
            )
            ctx.check("point_on_manifold").expect(ctx.tower.contains(i, x, ctx.tol), (i, x))
            ctx.check("bond_identity").expect(ctx.tower.bond(i, i, x) == x, (i, x))
            try:
                composite = ctx.tower.bond(j, k, ctx.tower.bond(i, j, x))
                ctx.check("bond_composition").residual(vec_residual(composite, ctx.tower.bond(i, k, x)), (i, j, k, x))
            except LimitBundleError as e:
                ctx.check("bond_composition").error(e, (i, j, k, x))
            if isinstance(family, StereoChartFamily):
                _ambient_checks(ctx, family, x)

        # Coordinate transitions commute with lambda_ij
        source, target = ctx.family(rng, i), ctx.family(rng, i)
        foot = foot_in(ctx, rng, i, [source, target])
        if foot is not None:
            sample = (source.key, target.key, i, j, foot)
            try:
                ybar = source.forward(i, foot)
                left = tower.coordinate_transition(source, target, j, ctx.tower.coordinate_bond(i, j, ybar))
                right = ctx.tower.coordinate_bond(i, j, tower.coordinate_transition(source, target, i, ybar))
                ctx.check("transition_naturality").residual(vec_residual(left, right), sample)
            except LimitBundleError as e:
                ctx.check("transition_naturality").error(e, sample)

        if sphere:
            level = ctx.level(rng, max(f.min_level for f in atlas))
            a, b, c = (f.chart for f in atlas)
            foot = foot_in(ctx, rng, level, atlas, max_coord=None if ctx.exact else 1e3)
            if foot is not None:
                try:
                    y = tower.chart_forward(a, SpherePoint(foot))
                    via = tower.transition(b, c, tower.transition(a, b, y))
                    ctx.check("ambient_cocycle").residual(vec_residual(via, tower.transition(a, c, y)), (level, foot))
                except LimitBundleError as e:
                    ctx.check("ambient_cocycle").error(e, (level, foot))

            seed = int(rng.integers(2**32))
            p = tower.random_sphere_point(i, seed)
            q = tower.random_sphere_point(i, seed)
            ctx.check("sphere_sampler").residual(abs(finseq.norm_sq(p.coords) - 1), (i, seed), tol=SPHERE_SAMPLER_TOL)
            ctx.check("sphere_sampler_deterministic").expect(p == q and p.coords.degree <= i + 1, (i, seed))
