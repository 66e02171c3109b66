"""Exact-arithmetic cohomology, Massey products and cat/TC bounds for finite rational DGAs."""

__version__ = "0.1.0"
