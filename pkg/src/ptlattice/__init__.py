"""Exact secular equations and Sturmian bound states of a PT-symmetric lattice."""

__version__ = "0.1.0"
