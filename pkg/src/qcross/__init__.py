"""Exact computations on cross t-intersecting families of subspaces over F_q."""

__version__ = "0.1.0"
