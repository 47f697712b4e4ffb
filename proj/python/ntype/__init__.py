"""Four-level N-type atom: dynamics, steady states and atom-field entanglement."""

from ._ntype import *  # noqa: F401,F403
from ._ntype import __version__  # noqa: F401
