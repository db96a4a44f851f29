"""Subspace geometry and learning on the Grassmann manifold."""

from grasslearn._core import *  # noqa: F401,F403
from grasslearn._core import __version__  # noqa: F401
