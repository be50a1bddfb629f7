"""Exact tools for sparse binary forms: invariants, homographies, isomorphy and counting."""

__version__ = "0.1.0"
