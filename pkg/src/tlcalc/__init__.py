"""Exact computations in Temperley-Lieb algebras."""

__version__ = "0.1.0"
