"""
Spectral calculus for smooth 2pi-periodic functions on equispaced grids.

Transforms are unnormalized internally; the 1/n factor is applied in
:func:`forward_coeffs` only.  The derivative of the Nyquist mode k = -m/2
is set to zero.
"""

from __future__ import annotations

import numpy as np

from src.errors import DownsampleForbiddenError, InvalidGridError
from src.spectral.series import (
    FourierSeries,
    SemiPeriodicField,
    _check_even,
    _grid_to_series,
    _ik_times,
    _series_to_grid,
)


def forward_coeffs(samples: np.ndarray) -> FourierSeries:
    """Trapezoidal Fourier coefficients of grid samples.

    Parameters
    ----------
    samples:
        Values f(alpha_j) at alpha_j = 2 pi j / n, n even.

    Returns
    -------
    FourierSeries
        c(k) = (1/n) sum_j f_j exp(-i k alpha_j) for k = -n/2 ... n/2 - 1.
    """
    values = np.asarray(samples)
    if values.ndim != 1:
        raise InvalidGridError(f"samples must be one-dimensional, got shape {values.shape}")
    _check_even(values.size, 4, "grid size n")
    if not np.all(np.isfinite(values)):
        raise InvalidGridError("samples contain non-finite values")
    return _grid_to_series(values)


def inverse_samples(series: FourierSeries, n_out: int, real: bool = True) -> np.ndarray:
    """Evaluate the truncated series on the n_out-point grid (zero padding).

    Raises :class:`DownsampleForbiddenError` when ``n_out < series.m``.
    The real part is returned unless ``real=False``; for real data this
    is the symmetric split of the Nyquist mode.
    """
    _check_even(n_out, 2, "output grid size")
    if n_out < series.m:
        raise DownsampleForbiddenError(
            f"n_out={n_out} is smaller than the series size m={series.m}"
        )
    values = _series_to_grid(series, n_out)
    return values.real if real else values


def differentiate(series: FourierSeries) -> FourierSeries:
    """Term-by-term derivative; the k = -m/2 coefficient is zeroed."""
    return _ik_times(series)


def antiderivative(series: FourierSeries) -> SemiPeriodicField:
    """F(alpha) = c(0) alpha + sum_{k != 0} c(k)/(ik) (exp(ik alpha) - 1).

    The constant coefficient of the periodic part cancels the sum of the
    others so that F(0) = 0; the slope is the constant series c(0).
    """
    k = series.wavenumbers
    c = series.coeffs
    q = np.zeros(series.m, dtype=complex)
    nonzero = k != 0
    q[nonzero] = c[nonzero] / (1j * k[nonzero])
    q[series.m // 2] = -np.sum(q[nonzero])
    return SemiPeriodicField(FourierSeries(q), FourierSeries.constant(series.mean, series.m))


def periodic_antiderivative_samples(samples: np.ndarray) -> np.ndarray:
    """Grid values of the antiderivative of *samples* (slope included)."""
    field = antiderivative(forward_coeffs(samples))
    return field.samples(np.asarray(samples).size)


def upsample(samples: np.ndarray, n_out: int) -> np.ndarray:
    """Fourier-interpolate periodic grid samples onto n_out >= n nodes."""
    return inverse_samples(forward_coeffs(samples), n_out)


def spectral_derivative_samples(samples: np.ndarray, order: int = 1) -> np.ndarray:
    """Grid values of the order-th spectral derivative."""
    series = forward_coeffs(samples)
    for _ in range(order):
        series = differentiate(series)
    return inverse_samples(series, np.asarray(samples).size)


__all__ = [
    "forward_coeffs",
    "inverse_samples",
    "differentiate",
    "antiderivative",
    "periodic_antiderivative_samples",
    "upsample",
    "spectral_derivative_samples",
]
