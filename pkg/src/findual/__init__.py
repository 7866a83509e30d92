"""Finite duality toolkit: semilattices, algebraic frames and generalized Priestley spaces."""
from .order import FinitePoset, bound, classify_poset, find_isomorphism, hasse_covers

__version__ = "0.1.0"

__all__ = ["FinitePoset", "bound", "classify_poset", "find_isomorphism", "hasse_covers"]
