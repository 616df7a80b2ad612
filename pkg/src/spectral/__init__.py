"""Spectral calculus on equispaced periodic grids."""

from src.spectral.calculus import (
    antiderivative,
    differentiate,
    forward_coeffs,
    inverse_samples,
    periodic_antiderivative_samples,
    spectral_derivative_samples,
    upsample,
)
from src.spectral.series import (
    TWO_PI,
    FourierSeries,
    SemiPeriodicField,
    UniformGrid,
    multiply_series,
)

__all__ = [
    "TWO_PI",
    "FourierSeries",
    "SemiPeriodicField",
    "UniformGrid",
    "antiderivative",
    "differentiate",
    "forward_coeffs",
    "inverse_samples",
    "multiply_series",
    "periodic_antiderivative_samples",
    "spectral_derivative_samples",
    "upsample",
]
