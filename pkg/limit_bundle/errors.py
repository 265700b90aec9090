"""Exceptions raised by limit-bundle.

Every error is a ``ValueError`` so callers that only care about bad input can
catch the builtin; the CLI maps the configuration errors to exit status 2.
"""

from typing import Any, Optional


class LimitBundleError(ValueError):
    """Base class for all library errors."""


class AmbientTooSmall(LimitBundleError):
    """An element does not fit in the requested ambient level."""


class IndexOutOfRange(LimitBundleError):
    """A level index is not an object of the directed system."""


class SystemMismatch(LimitBundleError):
    """Two limit elements come from different directed systems."""


class ConeConditionViolated(LimitBundleError):
    """A family of maps is not compatible with the bonding maps."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class Singular(LimitBundleError):
    """A block matrix has zero determinant."""


class NumericallySingular(Singular):
    """A floating point pivot fell below the singularity threshold."""


class OutsideChartDomain(LimitBundleError):
    """A point is not in the domain of a chart."""


class NotInPerp(LimitBundleError):
    """A chart coordinate is not orthogonal to the chart pole."""


class NotOnSphere(LimitBundleError):
    """A vector does not have unit weak norm."""


class LevelDecrease(LimitBundleError):
    """A tangent bonding map was asked to go down the tower."""


class EvaluationFailure(LimitBundleError):
    """A user supplied map failed while being differentiated."""


class ConfigError(LimitBundleError):
    """Base class for harness configuration errors (exit status 2)."""


class UnknownSuite(ConfigError):
    pass


class UnknownTower(ConfigError):
    pass


class ConfigInvalid(ConfigError):
    pass
