# Geometry of the direct limit: sequences, directed systems, the group
# GL(infinity, R), manifold towers and the tangent bundle.
from . import finseq
from . import dirlim
from . import glinf
from . import tower
from . import tangent

__all__ = [
    'finseq',
    'dirlim',
    'glinf',
    'tower',
    'tangent',
]
