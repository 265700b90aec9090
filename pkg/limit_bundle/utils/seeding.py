"""Per-trial random generators."""

import hashlib

import numpy as np


def suite_key(name: str) -> int:
    """A stable 64-bit key for a suite name."""
    return int.from_bytes(hashlib.blake2b(name.encode("utf-8"), digest_size=8).digest(), "big")


def trial_rng(seed: int, suite: str, trial: int) -> np.random.Generator:
    """
    The generator of one trial, derived from (master seed, suite, trial index)
    only, so trial order and scheduling never change the samples.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(suite_key(suite), trial)))
