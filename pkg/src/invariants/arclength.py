"""
Fourier coefficients in the arclength variable from an arbitrary parametrization.

With sigma = 2 pi s / L the change of variables ds = s_alpha dalpha gives

    F[f](k) = (1/L) int_0^L f e^{-2 pi i k s / L} ds
            ~ (h / L) sum_j f(alpha_j) s_alpha(alpha_j) e^{-i k sigma_j}

on an upsampled alpha-grid, evaluated by a Type-1 NUFFT at the
nonuniform nodes sigma_j = 2 pi s(alpha_j) / L.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from src.errors import UndersampledExponentialError
from src.geometry import CurveGeometry, CurveKind
from src.nufft import nufft_type1
from src.observability.timing import timed_operation
from src.spectral.calculus import upsample
from src.spectral.series import TWO_PI, FourierSeries, _check_even

NUP_CAP = 65536


def default_n_up(n1: int, kind: CurveKind) -> int:
    """2 N1 for closed curves; 16 N1 capped at 65536 for horizontally periodic ones."""
    if CurveKind(kind) is CurveKind.closed:
        return 2 * n1
    return max(n1, min(16 * n1, NUP_CAP))


def arclength_coeffs(
    f_samples: np.ndarray,
    geometry: CurveGeometry,
    n_up: int,
    k_max: int,
    eps_rel: Optional[float] = None,
) -> FourierSeries:
    """Coefficients F[f](k), k = -k_max ... k_max - 1, of f as a function of arclength.

    Parameters
    ----------
    f_samples:
        Periodic function values at the curve's alpha-nodes.
    geometry:
        Geometry of the same curve.
    n_up:
        Upsampled grid size, >= the curve's grid size.
    k_max:
        Highest retained wavenumber, <= n_up / 2.
    eps_rel:
        Requested NUFFT accuracy.

    Raises
    ------
    UndersampledExponentialError
        If k_max > n_up / 2.
    """
    f = np.asarray(f_samples, dtype=float)
    n = geometry.n
    _check_even(n_up, n, "upsampled grid size n_up")
    if k_max > n_up // 2 or k_max < 1:
        raise UndersampledExponentialError(
            f"k_max={k_max} needs n_up >= {2 * k_max}, got n_up={n_up}"
        )
    with timed_operation("invariants", "arclength_coeffs", {"n": n, "n_up": n_up, "k_max": k_max}) as op:
        integrand = upsample(f * geometry.s_alpha, n_up)
        s_up = geometry.s_field.samples(n_up)
        nodes = TWO_PI * s_up / geometry.L
        weights = integrand * (TWO_PI / n_up) / geometry.L
        coeffs = nufft_type1(nodes, weights, 2 * k_max, eps_rel=eps_rel)
        op.summary = f"c0={coeffs.mean.real:.15g}"
        return coeffs
