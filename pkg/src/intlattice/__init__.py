"""Exact toolkit for integral symplectic and quadratic lattices."""

__version__ = "0.1.0"
