"""Group axioms of GL(infinity, R) on random elements."""

import logging

from ..config import registry
from ..errors import LimitBundleError
from ..geometry import finseq, glinf
from .sampling import block_magnitude, random_vector, relative_residual

logger = logging.getLogger(__name__)

# Largest block size of the sampled elements
MAX_BLOCK = 8


@registry.suite("group", "GL(infinity, R) group axioms, canonical forms and the action on R^infinity")
def group_suite(ctx) -> None:
    max_size = min(MAX_BLOCK, ctx.config.i_max)
    for _, rng in ctx.trials():
        g = glinf.random_element(rng, max_size, ctx.mode)
        h = glinf.random_element(rng, max_size, ctx.mode)
        k = glinf.random_element(rng, max_size, ctx.mode)
        sample = (g, h, k)

        try:
            left = glinf.compose(glinf.compose(g, h), k)
            right = glinf.compose(g, glinf.compose(h, k))
            scale = block_magnitude(g) * block_magnitude(h) * block_magnitude(k)
            ctx.check("associativity").residual(relative_residual(glinf.max_abs_diff(left, right), scale), sample)
        except LimitBundleError as e:
            ctx.check("associativity").error(e, sample)

        identity = glinf.identity()
        ctx.check("identity").residual(
            max(
                glinf.max_abs_diff(glinf.compose(g, identity), g),
                glinf.max_abs_diff(glinf.compose(identity, g), g),
            ),
            g,
        )

        try:
            g_inv = glinf.inverse(g)
            scale = block_magnitude(g) * block_magnitude(g_inv) * max(g.size, 1)
            residual = max(
                glinf.max_abs_diff(glinf.compose(g, g_inv), identity),
                glinf.max_abs_diff(glinf.compose(g_inv, g), identity),
            )
            ctx.check("inverse").residual(relative_residual(residual, scale), g)
        except LimitBundleError as e:
            ctx.check("inverse").error(e, g)

        # Re-embedding a block at a larger size and canonicalizing gives g back
        padded = glinf.from_block(glinf.block_at(g, g.size + 1 + int(rng.integers(3))))
        ctx.check("canonical_form").expect(padded == g, g, padded=repr(padded))

        m = max(g.size, h.size) + int(rng.integers(3))
        embedded = glinf.compose(glinf.embed(g, m), glinf.embed(h, m))
        ctx.check("embed_compose").expect(embedded == glinf.embed(glinf.compose(g, h), m), (g, h, m))

        v = random_vector(ctx, rng, max_size + 2)
        try:
            left = glinf.apply(glinf.compose(g, h), v)
            right = glinf.apply(g, glinf.apply(h, v))
            scale = block_magnitude(g) * block_magnitude(h) * max((abs(c) for c in v), default=1)
            ctx.check("action").residual(relative_residual(finseq.max_abs_diff(left, right), scale), (g, h, v))
        except LimitBundleError as e:
            ctx.check("action").error(e, (g, h, v))

        det_gh = glinf.determinant(glinf.compose(g, h))
        product = glinf.determinant(g) * glinf.determinant(h)
        ctx.check("determinant").residual(relative_residual(abs(det_gh - product), abs(product)), (g, h))
