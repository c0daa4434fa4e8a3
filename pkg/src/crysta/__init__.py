"""Crystallizations of closed PL 4-manifolds: gems, invariants, moves, census."""
from .gem import Gem, GemError, parse, serialize, standard_gem, validate

__version__ = "0.1.0"

__all__ = ["Gem", "GemError", "parse", "serialize", "standard_gem", "validate", "__version__"]
