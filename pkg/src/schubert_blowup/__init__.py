"""Subword complexes, Kazhdan–Lusztig degenerations and boundary blow-ups."""

__version__ = "0.1.0"
