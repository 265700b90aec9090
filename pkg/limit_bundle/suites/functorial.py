"""Bonding laws, limit equivalence and universal maps of the directed systems."""

import logging

from ..config import registry
from ..errors import ConeConditionViolated, LimitBundleError
from ..geometry import dirlim, finseq, glinf, tangent
from .sampling import random_rep, random_vector, vec_residual

logger = logging.getLogger(__name__)


def _violations(report: dirlim.ValidationReport) -> dict:
    first = report.violations[0] if report.violations else None
    return {"law": first.law, "indices": list(first.indices)} if first else {}


@registry.suite("functorial", "Bonding laws of R^n, GL(R^n) and TM_i, limit equivalence and universal maps")
def functorial_suite(ctx) -> None:
    top = ctx.config.i_max
    euclidean = dirlim.euclidean_system(top)
    gl = dirlim.gl_system(top)
    e1 = finseq.basis(1, ctx.mode)

    for _, rng in ctx.trials():
        i, j = ctx.level_pair(rng)
        k = int(rng.integers(j, top + 1))
        x = random_vector(ctx, rng, i)
        y = random_vector(ctx, rng, i)
        z = random_vector(ctx, rng, i)

        report = dirlim.validate(euclidean, [(i, x)], seed=ctx.config.seed)
        ctx.check("euclidean_bonding").expect(report.ok, (i, x), **_violations(report))

        g = glinf.random_element(rng, i, ctx.mode)
        report = dirlim.validate(gl, [(i, g)], seed=ctx.config.seed)
        ctx.check("gl_bonding").expect(report.ok, (i, g), **_violations(report))

        v = random_vector(ctx, rng, i)
        m = int(rng.integers(i, top + 1))
        ctx.check("gl_action").expect(
            glinf.apply(glinf.embed(g, m), finseq.include(v, m)) == finseq.include(glinf.apply(g, v), m),
            (g, v, m),
        )

        a = dirlim.inject(euclidean, i, x)
        b = dirlim.inject(euclidean, j, finseq.include(x, j))
        c = dirlim.inject(euclidean, k, finseq.include(x, k))
        ctx.check("inject_equivalence").expect(dirlim.equivalent(a, b), (i, j, x))
        ctx.check("equivalence_laws").expect(
            dirlim.equivalent(a, a)
            and dirlim.equivalent(a, b) == dirlim.equivalent(b, a)
            and (not (dirlim.equivalent(a, b) and dirlim.equivalent(b, c)) or dirlim.equivalent(a, c)),
            (i, j, k, x),
        )

        # Differs from x in one coordinate of R^i
        other = x + finseq.basis(int(rng.integers(1, i + 1)), ctx.mode)
        collisions = dirlim.is_injective_on(euclidean, [(i, x), (i, other)])
        ctx.check("strictness").expect(not collisions, (i, x, other))

        try:
            psi = dirlim.universal_map(euclidean, lambda level, w: finseq.weak_inner(w, e1), [(i, x)])
            ctx.check("universal_map").expect(psi(c) == finseq.weak_inner(x, e1), (i, k, x))
        except ConeConditionViolated as e:
            ctx.check("universal_map").error(e, (i, x))

        if x.coord(1) != 0 and i < top:
            try:
                dirlim.universal_map(euclidean, lambda level, w: level * w.coord(1), [(i, x)])
                ctx.check("cone_violation_detected").expect(False, (i, x), reason="non-cone accepted")
            except ConeConditionViolated as e:
                ctx.check("cone_violation_detected").expect(e.witness[0] == i, (i, x), witness=repr(e.witness))

        ctx.check("inner_product_preserved").expect(
            finseq.weak_inner(finseq.include(x, k), finseq.include(y, k)) == finseq.weak_inner(x, y),
            (x, y, k),
        )
        s, t = ctx.to_mode(int(rng.integers(-3, 4))), ctx.to_mode(int(rng.integers(-3, 4)))
        bilinear = abs(
            finseq.weak_inner(s * x + t * y, z) - (s * finseq.weak_inner(x, z) + t * finseq.weak_inner(y, z))
        )
        ctx.check("inner_product_bilinear").residual(bilinear, (s, t, x, y, z))

        lowest = min(family.min_level for family in ctx.tower.atlas())
        ti, tj = ctx.level_pair(rng, lowest)
        tk = int(rng.integers(tj, top + 1))
        try:
            rep = random_rep(ctx, rng, ti)
            ctx.check("tangent_identity").expect(tangent.phi_T(rep, ti) == rep, rep)
            composite = tangent.phi_T(tangent.phi_T(rep, tj), tk)
            direct = tangent.phi_T(rep, tk)
            ctx.check("tangent_composition").residual(
                max(vec_residual(composite.base, direct.base), vec_residual(composite.vel, direct.vel)),
                (ti, tj, tk, rep),
            )
        except LimitBundleError as e:
            ctx.check("tangent_composition").error(e, (ti, tj, tk))
