# Import all suites so they register on the shared registry.
# The import order is the order in which ``--suite all`` runs them.
from . import group
from . import functorial
from . import charts
from . import cocycle
from . import diagram
from . import tangency
from . import roundtrip
from . import derivative

# Export all modules
__all__ = [
    'group',
    'functorial',
    'charts',
    'cocycle',
    'diagram',
    'tangency',
    'roundtrip',
    'derivative',
]
