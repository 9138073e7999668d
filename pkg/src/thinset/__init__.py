"""Computable hierarchy of thin subsets of the natural numbers."""

__version__ = "0.1.0"
