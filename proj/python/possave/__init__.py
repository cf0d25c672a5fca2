"""Optimal saving under certain, random and fuzzy interest-rate risk."""

from ._possave import *  # noqa: F401,F403
from ._possave import __doc__  # noqa: F401
