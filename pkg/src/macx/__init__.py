"""Combinatorial tools for moment-angle complexes and Golodness."""

__version__ = "0.1.0"
