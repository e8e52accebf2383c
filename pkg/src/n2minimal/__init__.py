"""Sector data, fusion rules and extensions of the N=2 superconformal minimal models."""

from .labels import *  # noqa: F401,F403
from .fusion import *  # noqa: F401,F403
from .currents import *  # noqa: F401,F403

__version__ = "0.1.0"
from .extensions import *  # noqa: F401,F403
