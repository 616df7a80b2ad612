"""Adapter for the optional ``finufft`` package (``pip install curve-reparam[finufft]``)."""

from __future__ import annotations

import numpy as np

from src.errors import NufftPlanError

# finufft rejects tolerances below roughly machine precision
_FINUFFT_EPS_FLOOR = 1e-14


def _module():
    try:
        import finufft
    except ImportError as exc:
        raise NufftPlanError(
            "REPARAM_NUFFT_BACKEND=finufft but the finufft package is not installed"
        ) from exc
    return finufft


def finufft_type1(x: np.ndarray, f: np.ndarray, m: int, eps_rel: float) -> np.ndarray:
    """Centered-order sums sum_j f_j exp(-i k x_j), k = -m/2 ... m/2-1."""
    eps = max(eps_rel, _FINUFFT_EPS_FLOOR)
    return _module().nufft1d1(x, f.astype(np.complex128), m, eps=eps, isign=-1)


def finufft_type2(x: np.ndarray, coeffs: np.ndarray, eps_rel: float) -> np.ndarray:
    """Values sum_k c_k exp(+i k x_j) for centered-order coefficients."""
    eps = max(eps_rel, _FINUFFT_EPS_FLOOR)
    return _module().nufft1d2(x, np.ascontiguousarray(coeffs, dtype=np.complex128), eps=eps, isign=1)
