"""Exact computation of higher Hochschild homology of wedges of circles."""
__version__ = "0.1.0"
