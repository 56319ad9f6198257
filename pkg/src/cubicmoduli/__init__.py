"""Exact computations on the moduli of cubic threefolds."""

__version__ = "0.1.0"
