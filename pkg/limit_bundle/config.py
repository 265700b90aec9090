"""Configuration module for limit-bundle."""

from .utils.registry import SuiteRegistry

# Tolerances
DEFAULT_TOL = 1e-9
DOMAIN_GUARD = 1e-9
SINGULAR_RTOL = 1e-12

# Finite differences
FD_STEP = 1e-6
FD_RTOL = 1e-5

# Harness defaults
DEFAULT_DIMS = (2, 12)
DEFAULT_TRIALS = 500
DEFAULT_SEED = 0
MAX_SEED = 2**64

# Initialize the suite registry with a static name
registry = SuiteRegistry("limit-bundle")
