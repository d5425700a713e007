"""Reducibility of random integer polynomials over the rationals."""

__version__ = "0.1.0"
