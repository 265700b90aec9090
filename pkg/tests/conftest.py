import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from limit_bundle.geometry.tower import euclidean_tower, sphere_tower

# Exact arithmetic grows with the level, so no per-example deadline
settings.register_profile("default", deadline=None, max_examples=60)
settings.register_profile(
    "fast", deadline=None, max_examples=15, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def sphere():
    return sphere_tower(6)


@pytest.fixture
def euclidean():
    return euclidean_tower(6)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
