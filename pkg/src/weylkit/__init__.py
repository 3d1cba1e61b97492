"""Exact affine Weyl group and relative Coxeter toolkit."""

__version__ = "0.1.0"
