"""Finite relative categories, nerves, and homotopy-pullback checks."""

__version__ = "0.1.0"
