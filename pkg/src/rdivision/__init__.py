"""Adaptive-gamma (r, p)-divisions of sparse graphs and negative-weight shortest paths."""

__version__ = "0.1.0"
