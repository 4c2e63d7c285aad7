"""Layered 1D Helmholtz solver: exact layer recursions and stability bounds."""

from ._core import *  # noqa: F401,F403
