"""Martingale optimal transport and Wasserstein inequality tools."""

from ._mwi import *  # noqa: F401,F403
from ._mwi import __doc__  # noqa: F401

__version__ = "0.1.0"
