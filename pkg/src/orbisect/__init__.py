"""Gamma-sector decomposition and vector-field obstructions for finite quotient orbifolds."""

__version__ = "0.1.0"
