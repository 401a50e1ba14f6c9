"""Minimum percolating sets for edge and vertex bootstrap percolation on Hamming graphs."""

__version__ = "0.1.0"
