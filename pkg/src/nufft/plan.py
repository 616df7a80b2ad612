"""
NUFFT plans for truncated-Gaussian gridding.

A plan fixes the mode count, the oversampled fine grid and the Gaussian
kernel for a requested relative accuracy.  The kernel is the periodized
Gaussian g(x) = sum_l exp(-(x - 2 pi l)^2 / (4 tau)) whose Fourier symbol
sqrt(tau / pi) exp(-k^2 tau) is divided out after the fine-grid FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from src.config.settings import EPS_MAX, EPS_MIN, get_settings
from src.errors import NufftPlanError
from src.observability.logger import get_logger

logger = get_logger("nufft")


def spreading_width(eps_rel: float) -> int:
    """Kernel half-width in fine-grid cells for the requested accuracy.

    Both the truncation and the aliasing error of the Gaussian at sigma = 2
    decay like exp(-2 pi w / 3), so w ~ 1.1 digits plus a safety cell.
    """
    digits = -math.log10(eps_rel)
    return int(math.ceil(1.1 * digits)) + 2


@dataclass(frozen=True)
class NufftPlan:
    """Immutable Gaussian gridding parameters for one mode count."""

    m: int
    eps_rel: float
    sigma: float
    width: int
    n_fine: int
    tau: float

    @property
    def fine_spacing(self) -> float:
        return 2.0 * np.pi / self.n_fine

    def kernel_symbol(self, k: np.ndarray) -> np.ndarray:
        """Fourier coefficients of the periodized Gaussian at wavenumbers k."""
        k = np.asarray(k, dtype=float)
        return np.sqrt(self.tau / np.pi) * np.exp(-k * k * self.tau)

    def deconvolution(self, k: np.ndarray) -> np.ndarray:
        """Reciprocal of :meth:`kernel_symbol`, formed without underflow."""
        k = np.asarray(k, dtype=float)
        return np.sqrt(np.pi / self.tau) * np.exp(k * k * self.tau)


@lru_cache(maxsize=64)
def _cached_plan(m: int, eps_rel: float, sigma: float) -> NufftPlan:
    width = spreading_width(eps_rel)
    n_fine = int(math.ceil(sigma * m))
    n_fine += n_fine % 2
    n_fine = max(n_fine, 2 * width)
    sigma_eff = n_fine / m
    tau = math.pi * width / (m * m * sigma_eff * (sigma_eff - 0.5))
    plan = NufftPlan(m=m, eps_rel=eps_rel, sigma=sigma_eff, width=width, n_fine=n_fine, tau=tau)
    logger.debug(
        "NUFFT plan created",
        extra_data={"m": m, "eps_rel": eps_rel, "width": width, "n_fine": n_fine, "tau": tau},
    )
    return plan


def make_plan(m: int, eps_rel: Optional[float] = None, sigma: Optional[float] = None) -> NufftPlan:
    """Build (or fetch from cache) the plan for *m* modes.

    Parameters
    ----------
    m:
        Even mode count of the transform.
    eps_rel:
        Requested relative accuracy in [1e-15, 1e-2]; defaults to the
        ``REPARAM_DEFAULT_EPS`` setting.
    sigma:
        Oversampling factor >= 2; defaults to ``REPARAM_OVERSAMPLING``.
    """
    settings = get_settings()
    eps_rel = settings.default_eps if eps_rel is None else float(eps_rel)
    sigma = settings.oversampling if sigma is None else float(sigma)
    if not EPS_MIN <= eps_rel <= EPS_MAX:
        raise NufftPlanError(f"eps_rel={eps_rel:g} outside [{EPS_MIN:g}, {EPS_MAX:g}]")
    if m <= 0 or m % 2:
        raise NufftPlanError(f"mode count must be even and positive, got {m}")
    if sigma < 2.0:
        raise NufftPlanError(f"oversampling factor must be >= 2, got {sigma}")
    return _cached_plan(int(m), eps_rel, sigma)
