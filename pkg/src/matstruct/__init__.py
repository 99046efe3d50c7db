"""Exact matroid structure computations with checkable certificates."""

__version__ = "0.1.0"
