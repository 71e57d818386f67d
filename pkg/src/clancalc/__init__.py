"""Exact combinatorics of (p,q)-clans, BPD fragments and double Schubert polynomials."""

from .clans import Clan, parse, format, enumerate_clans
from .permutations import Permutation
from .polynomials import Polynomial

__all__ = ["Clan", "Permutation", "Polynomial", "parse", "format", "enumerate_clans"]
