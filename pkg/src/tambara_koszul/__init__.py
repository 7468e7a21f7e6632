"""Equivariant Koszul complexes, their homology, and Tor computations for cyclic p-groups."""

__version__ = "0.1.0"
