"""Exact computations for Steiner triple system algebras."""

__version__ = "0.1.0"
