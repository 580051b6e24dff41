"""Exact spectral toolkit for Cayley graphs of S_n and arrangement graphs."""

from cayleyspec.errors import CapExceededError, GensetParseError, InvariantViolation
from cayleyspec.perm import CycleType, GroundPartition, Permutation

__all__ = [
    "CapExceededError",
    "CycleType",
    "GensetParseError",
    "GroundPartition",
    "InvariantViolation",
    "Permutation",
]

__version__ = "0.1.0"
