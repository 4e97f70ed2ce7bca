"""Exact computer algebra for quantum symmetric spaces and Macdonald-Koornwinder polynomials."""

__version__ = "0.1.0"
