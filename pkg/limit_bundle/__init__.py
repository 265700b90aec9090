"""Direct limits of manifolds, their tangent bundles and property checks."""

try:
    from ._version import version as __version__
except ImportError:
    __version__ = "unknown"
