"""Invariant Fourier coefficients of the arclength parametrization."""

from src.invariants.arclength import arclength_coeffs, default_n_up
from src.invariants.extract import ArclengthInvariants, extract, invert, sample_uniform

__all__ = [
    "ArclengthInvariants",
    "arclength_coeffs",
    "default_n_up",
    "extract",
    "invert",
    "sample_uniform",
]
