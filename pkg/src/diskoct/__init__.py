"""Approximation algorithms for odd cycle transversal on disk graphs."""

__version__ = "0.1.0"
