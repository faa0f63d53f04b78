"""Riordan-matrix toolkit for simplicial complexes and finite posets."""

__version__ = "0.1.0"
