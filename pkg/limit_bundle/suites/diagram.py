"""The trivializations Psi_i against the tangent bonding maps Phi_ij."""

import logging

from ..config import registry
from ..errors import LimitBundleError
from ..geometry import tangent
from .sampling import foot_in, relative_residual, vec_residual

logger = logging.getLogger(__name__)


@registry.suite("diagram", "(phi_ij x lambda_ij) o Psi_i = Psi_j o Phi_ij, projection square, lift compatibility, fiber linearity")
def diagram_suite(ctx) -> None:
    tower = ctx.tower
    for _, rng in ctx.trials():
        i, j = ctx.level_pair(rng)
        family = ctx.family(rng, i)
        ybar = tower.random_coordinates(i, rng, ctx.mode)
        vbar = tower.random_coordinates(i, rng, ctx.mode)
        sample = (family.key, i, j, ybar, vbar)

        ctx.check("diagram").merge(tangent.diagram_check(tower, family, i, j, [(ybar, vbar)], ctx.tol))

        try:
            rep = tangent.th(tower, family, i, ybar, vbar)
            pushed = tangent.phi_T(rep, j)
            ctx.check("projection_square").residual(
                vec_residual(tower.bond(i, j, tangent.projection(rep)), tangent.projection(pushed)), sample
            )
            lifted = tangent.th(tower, family, j, tower.coordinate_bond(i, j, ybar), tower.coordinate_bond(i, j, vbar))
            ctx.check("lift_compatibility").residual(
                max(vec_residual(pushed.base, lifted.base), vec_residual(pushed.vel, lifted.vel)), sample
            )
            foot, _ = tangent.trivialize(rep)
            ctx.check("trivialization_foot").expect(foot == tangent.projection(rep), sample)
        except LimitBundleError as e:
            ctx.check("projection_square").error(e, sample)

        # Psi in another family is linear on each fiber
        other = ctx.family(rng, i)
        foot = foot_in(ctx, rng, i, [family, other], max_coord=None if ctx.exact else 1e3)
        if foot is None:
            continue
        base = family.forward(i, foot)
        v = tower.random_coordinates(i, rng, ctx.mode)
        w = tower.random_coordinates(i, rng, ctx.mode)
        s, t = ctx.to_mode(int(rng.integers(-3, 4))), ctx.to_mode(int(rng.integers(-3, 4)))
        sample = (family.key, other.key, i, foot, v, w, s, t)
        try:
            _, combined = tangent.trivialize(tangent.th(tower, family, i, base, s * v + t * w), other)
            _, fv = tangent.trivialize(tangent.th(tower, family, i, base, v), other)
            _, fw = tangent.trivialize(tangent.th(tower, family, i, base, w), other)
            scale = max([1] + [abs(c) for c in combined] + [abs(c) for c in fv] + [abs(c) for c in fw])
            ctx.check("fiber_linearity").residual(relative_residual(vec_residual(combined, s * fv + t * fw), scale), sample)
        except LimitBundleError as e:
            ctx.check("fiber_linearity").error(e, sample)
