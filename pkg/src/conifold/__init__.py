"""Exact verification of conifold transitions for CICY threefolds."""

__version__ = "0.1.0"
