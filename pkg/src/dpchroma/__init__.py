"""Exact chromatic polynomials, DP color functions of small graphs, and checks of their bounds."""

__version__ = "0.1.0"
