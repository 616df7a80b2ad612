"""
Type-1 and Type-2 nonuniform FFTs on the torus.

Type 1 (nonuniform -> modes):   F(k) = sum_j f_j exp(-i k x_j)
Type 2 (modes -> nonuniform):   f_j  = sum_k c_k exp(+i k x_j)

with k = -m/2 ... m/2 - 1.  The built-in backend spreads onto an
oversampled grid with a truncated Gaussian, applies an FFT and divides by
the kernel symbol.  ``REPARAM_NUFFT_BACKEND=finufft`` delegates to the
optional ``finufft`` package instead.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from src.config.settings import get_settings
from src.errors import NufftPlanError
from src.nufft.plan import NufftPlan, make_plan
from src.spectral.series import TWO_PI, FourierSeries


def wrap_nodes(nodes: np.ndarray) -> np.ndarray:
    """Reduce nodes modulo 2 pi into [0, 2 pi)."""
    x = np.mod(np.asarray(nodes, dtype=float).ravel(), TWO_PI)
    # mod can round tiny negatives up to exactly 2 pi
    x[x >= TWO_PI] = 0.0
    return x


def _resolve_plan(m: int, plan: Optional[NufftPlan], eps_rel: Optional[float]) -> NufftPlan:
    if plan is None:
        return make_plan(m, eps_rel)
    if plan.m != m:
        raise NufftPlanError(f"plan built for m={plan.m} used with m={m}")
    return plan


def _kernel_window(x: np.ndarray, plan: NufftPlan) -> Tuple[np.ndarray, np.ndarray]:
    """Fine-grid indices (wrapped) and Gaussian weights, shape (len(x), 2w)."""
    h = plan.fine_spacing
    base = np.floor(x / h).astype(np.int64)
    offsets = np.arange(-plan.width + 1, plan.width + 1)
    idx = base[:, None] + offsets[None, :]
    dist = x[:, None] - idx * h
    weights = np.exp(-(dist * dist) / (4.0 * plan.tau))
    return np.mod(idx, plan.n_fine), weights


def _use_finufft(backend: Optional[str]) -> bool:
    return (backend or get_settings().nufft_backend) == "finufft"


# ---------------------------------------------------------------------------
# Type 1
# ---------------------------------------------------------------------------

def nufft_type1(
    nodes: np.ndarray,
    weights: np.ndarray,
    m: int,
    plan: Optional[NufftPlan] = None,
    eps_rel: Optional[float] = None,
    backend: Optional[str] = None,
) -> FourierSeries:
    """Exponential sums F(k) = sum_j f_j exp(-i k x_j) for k = -m/2 ... m/2-1.

    Parameters
    ----------
    nodes:
        Nonuniform points; reduced modulo 2 pi.
    weights:
        Complex strengths f_j, same length as *nodes*.
    m:
        Even number of output modes.
    plan:
        Precomputed plan for *m* modes; built from *eps_rel* when omitted.

    Returns
    -------
    FourierSeries
        Raw sums (no 1/n normalization), accurate to
        eps_rel * sum_j |f_j| in the max norm.
    """
    plan = _resolve_plan(m, plan, eps_rel)
    x = wrap_nodes(nodes)
    f = np.asarray(weights, dtype=complex).ravel()
    if f.size != x.size:
        raise NufftPlanError(f"{x.size} nodes but {f.size} weights")
    if x.size == 0:
        return FourierSeries.zeros(m)

    if _use_finufft(backend):
        from src.nufft.finufft_backend import finufft_type1
        return FourierSeries(finufft_type1(x, f, m, plan.eps_rel))

    idx, kernel = _kernel_window(x, plan)
    spread = f[:, None] * kernel
    flat = idx.ravel()
    grid = (
        np.bincount(flat, weights=spread.real.ravel(), minlength=plan.n_fine)
        + 1j * np.bincount(flat, weights=spread.imag.ravel(), minlength=plan.n_fine)
    )
    spectrum = np.fft.fft(grid)
    k = np.arange(-(m // 2), m // 2)
    values = spectrum[np.mod(k, plan.n_fine)] * plan.deconvolution(k) / plan.n_fine
    return FourierSeries(values)


# ---------------------------------------------------------------------------
# Type 2
# ---------------------------------------------------------------------------

def nufft_type2_many(
    nodes: np.ndarray,
    series: Sequence[FourierSeries],
    plan: Optional[NufftPlan] = None,
    eps_rel: Optional[float] = None,
    backend: Optional[str] = None,
) -> np.ndarray:
    """Evaluate several series at the same nodes; returns shape (len(series), n).

    The Gaussian window is computed once and shared by every series.
    """
    if not series:
        return np.zeros((0, np.size(nodes)), dtype=complex)
    m = max(s.m for s in series)
    plan = _resolve_plan(m, plan, eps_rel)
    x = wrap_nodes(nodes)
    coeffs = np.stack([s.padded(m).coeffs for s in series])
    if x.size == 0:
        return np.zeros((len(series), 0), dtype=complex)

    if _use_finufft(backend):
        from src.nufft.finufft_backend import finufft_type2
        return np.stack([finufft_type2(x, c, plan.eps_rel) for c in coeffs])

    k = np.arange(-(m // 2), m // 2)
    fine = np.zeros((len(series), plan.n_fine), dtype=complex)
    fine[:, np.mod(k, plan.n_fine)] = coeffs * plan.deconvolution(k)[None, :]
    fine = np.fft.ifft(fine, axis=1) * plan.n_fine
    idx, kernel = _kernel_window(x, plan)
    out = np.einsum("bnw,nw->bn", fine[:, idx], kernel)
    return out / plan.n_fine


def nufft_type2(
    nodes: np.ndarray,
    series: FourierSeries,
    plan: Optional[NufftPlan] = None,
    eps_rel: Optional[float] = None,
    backend: Optional[str] = None,
) -> np.ndarray:
    """Values f_j = sum_k c_k exp(i k x_j) at the nodes (complex array).

    Accurate to eps_rel * sum_k |c_k| in the max norm.
    """
    if plan is not None and plan.m != series.m:
        raise NufftPlanError(f"plan built for m={plan.m} used with m={series.m}")
    return nufft_type2_many(nodes, [series], plan, eps_rel, backend)[0]
