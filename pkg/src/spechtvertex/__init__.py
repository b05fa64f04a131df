"""Exact Specht modules over prime fields and vertex lower-bound certificates."""

__version__ = "0.1.0"
