"""Inverse-subordinator densities and long-time decay-law verification."""

from .laplace import InversionConfig, forward_laplace, invert

__all__ = ["InversionConfig", "forward_laplace", "invert"]
