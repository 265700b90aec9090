"""Closed-form differentials against central finite differences."""

import logging

import numpy as np

from ..config import FD_RTOL, FD_STEP, registry
from ..errors import LimitBundleError
from ..geometry import finseq, glinf, tangent
from ..geometry.tower import Sign, StereoChart, StereoChartFamily
from .cocycle import antipodal_jacobian
from .sampling import foot_in, random_vector

logger = logging.getLogger(__name__)

# Feet whose chart coordinates exceed this bound are resampled
COORD_BOUND = 10.0


def _relative(numeric, analytic) -> float:
    """Max-norm error relative to the analytic value, with a floor of 1."""
    numeric = np.asarray(numeric, dtype=float)
    analytic = np.asarray(analytic, dtype=float)
    scale = max(1.0, float(np.max(np.abs(analytic), initial=0.0)))
    return float(np.max(np.abs(numeric - analytic), initial=0.0)) / scale


def _dense(v: finseq.FinVec, d: int) -> np.ndarray:
    return np.array(v.padded(d), dtype=float)


@registry.suite("derivative", "du, d(u^-1), transition Jacobians and the antipodal Jacobian against finite differences", modes=("float",))
def derivative_suite(ctx) -> None:
    tower = ctx.tower
    for _, rng in ctx.trials():
        level = ctx.level(rng)
        d = tower.dim(level)
        ambient = tower.ambient_dim(level)

        x = random_vector(ctx, rng, ambient)
        v = random_vector(ctx, rng, ambient)
        numeric = tangent.directional_derivative(finseq.norm_sq, x, v, FD_STEP)
        ctx.check("norm_sq").residual(_relative(numeric, 2 * finseq.weak_inner(x, v)), (x, v), tol=FD_RTOL)

        family = ctx.family(rng, level)
        foot = foot_in(ctx, rng, level, [family], max_coord=COORD_BOUND)
        if foot is not None:
            sample = (family.key, level, foot)
            try:
                w = tower.tangent_projection(foot, random_vector(ctx, rng, ambient))
                numeric = tangent.directional_derivative(lambda z: family.forward(level, z), foot, w, FD_STEP)
                analytic = family.forward_differential(level, foot, w)
                ctx.check("forward_differential").residual(
                    _relative(_dense(numeric, d), _dense(analytic, d)), sample, tol=FD_RTOL
                )

                ybar = family.forward(level, foot)
                wbar = tower.random_coordinates(level, rng, ctx.mode)
                numeric = tangent.directional_derivative(lambda z: family.inverse(level, z), ybar, wbar, FD_STEP)
                analytic = family.inverse_differential(level, ybar, wbar)
                ctx.check("inverse_differential").residual(
                    _relative(_dense(numeric, ambient), _dense(analytic, ambient)), sample, tol=FD_RTOL
                )

                j = int(rng.integers(level, ctx.config.i_max + 1))
                numeric = tangent.directional_derivative(lambda z: tower.bond(level, j, z), foot, w, FD_STEP)
                analytic = tower.bond_differential(level, j, foot, w)
                ctx.check("bond_differential").residual(
                    _relative(_dense(numeric, tower.ambient_dim(j)), _dense(analytic, tower.ambient_dim(j))),
                    sample,
                    tol=FD_RTOL,
                )
            except LimitBundleError as e:
                ctx.check("forward_differential").error(e, sample)

        source, target = ctx.family(rng, level), ctx.family(rng, level)
        foot = foot_in(ctx, rng, level, [source, target], max_coord=COORD_BOUND)
        if foot is not None:
            sample = (source.key, target.key, level, foot)
            try:
                fiber = tangent.transition_fiber(tower, source, target, foot, level)
                jacobian = tangent.fiber_jacobian(source, target, level, source.forward(level, foot), d, FD_STEP)
                ctx.check("transition_jacobian").residual(
                    _relative(jacobian, np.array(glinf.block_at(fiber, d), dtype=float)), sample, tol=FD_RTOL
                )
            except LimitBundleError as e:
                ctx.check("transition_jacobian").error(e, sample)

        if isinstance(family, StereoChartFamily):
            minus = StereoChartFamily(StereoChart(family.chart.pole, Sign.MINUS))
            foot = foot_in(ctx, rng, level, [family, minus], max_coord=COORD_BOUND)
            if foot is not None:
                sample = (family.key, level, foot)
                try:
                    ybar = family.forward(level, foot)
                    jacobian = tangent.fiber_jacobian(family, minus, level, ybar, d, FD_STEP)
                    closed = np.array(glinf.block_at(antipodal_jacobian(ybar, d), d), dtype=float)
                    ctx.check("antipodal_jacobian").residual(_relative(jacobian, closed), sample, tol=FD_RTOL)
                except LimitBundleError as e:
                    ctx.check("antipodal_jacobian").error(e, sample)
