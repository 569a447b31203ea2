"""Exact-arithmetic engine for Hochschild homology of Bott-Samelson
bimodules and triply graded homology of braid closures in type A."""

__version__ = "0.1.0"
