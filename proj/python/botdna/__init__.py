"""Digital-DNA bot detection toolkit.

Python face of the C++ core: timeline encoding, compression statistics,
ranking metrics, sentiment scoring, and training-set enumeration.
"""

try:
    from ._botdna import *  # noqa: F401,F403
    from ._botdna import __version__  # noqa: F401
except ImportError:  # extension built out of tree, e.g. straight from CMake
    from _botdna import *  # noqa: F401,F403
    from _botdna import __version__  # noqa: F401
