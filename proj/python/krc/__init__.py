"""Finite semigroups, flows and certified Krohn-Rhodes complexity bounds."""

from ._krc import *  # noqa: F401,F403
from ._krc import __doc__  # noqa: F401
