"""Finite-dimensional operator algebra toolkit (Python front end of the C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import InvalidInput, ResourceError, StructuralError  # noqa: F401

__version__ = "0.1.0"
