"""
Error metrics between invariant sets and local-spacing diagnostics.

The L2 metric is computed in coefficient space (Plancherel); the Linf
metric compares the inverted curves on a dense uniform arclength grid.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from src.geometry import compute_geometry
from src.invariants import ArclengthInvariants, invert
from src.observability.logger import get_logger
from src.observability.metrics import MetricsCollector
from src.resample import RefinedCurve
from src.spectral.calculus import forward_coeffs
from src.spectral.series import FourierSeries
from src.validation.examples import ExampleCurve

logger = get_logger("validation")

LENGTH_TOL = 1e-8


class InvariantComparison(BaseModel):
    """Relative errors of a test invariant set against a reference."""
    l2_rel: float = Field(..., ge=0)
    linf_rel: float = Field(..., ge=0)
    length_rel: float = Field(..., ge=0, description="|L_test - L_ref| / L_ref")
    length_mismatch: bool = Field(default=False)
    dense_n: int = Field(..., gt=0)


def _stacked(inv: ArclengthInvariants, m: int) -> np.ndarray:
    return np.concatenate([inv.cx.padded(m).coeffs, inv.cy.padded(m).coeffs])


def compare_invariants(
    ref: ArclengthInvariants,
    test: ArclengthInvariants,
    dense_n: Optional[int] = None,
    eps_rel: Optional[float] = None,
) -> InvariantComparison:
    """Relative L2 (coefficients) and Linf (inverted points) differences.

    Bands are zero-padded to the larger of the two, so the reference is
    never truncated.  A length difference above 1e-8 relative is flagged
    and stays part of the error.
    """
    m = 2 * max(ref.k_max, test.k_max)
    c_ref = _stacked(ref, m)
    c_test = _stacked(test, m)
    l2_rel = float(np.linalg.norm(c_test - c_ref) / np.linalg.norm(c_ref))

    dense_n = dense_n or 4 * max(ref.k_max, test.k_max)
    fraction = np.arange(dense_n) / dense_n
    x_ref, y_ref = invert(ref, fraction * ref.L, eps_rel)
    x_test, y_test = invert(test, fraction * test.L, eps_rel)
    scale = max(float(np.max(np.abs(x_ref))), float(np.max(np.abs(y_ref))))
    linf_rel = float(np.max(np.hypot(x_test - x_ref, y_test - y_ref))) / scale

    length_rel = abs(test.L - ref.L) / ref.L
    mismatch = length_rel > LENGTH_TOL
    if mismatch:
        logger.warning("Invariant lengths differ", extra_data={"L_ref": ref.L, "L_test": test.L})
        MetricsCollector().record_warning("validation", "length_mismatch", f"relative {length_rel:.3e}")
    return InvariantComparison(
        l2_rel=l2_rel,
        linf_rel=linf_rel,
        length_rel=length_rel,
        length_mismatch=mismatch,
        dense_n=dense_n,
    )


# ---------------------------------------------------------------------------
# Local spacing
# ---------------------------------------------------------------------------

def spacing_tail_ratio(s_alpha: np.ndarray) -> float:
    """max |c(k)| over |k| >= n/4, relative to |c(0)|."""
    series: FourierSeries = forward_coeffs(np.asarray(s_alpha, dtype=float))
    tail = np.abs(series.wavenumbers) >= series.m // 4
    return float(np.max(np.abs(series.coeffs[tail]))) / abs(series.mean)


class LocalSpacingReport(BaseModel):
    """Input mesh versus refined mesh at equal point count."""
    n: int
    input_tail_ratio: float
    refined_tail_ratio: float
    input_inverse_peak: float = Field(..., description="max(1/s) / mean(1/s) of the input mesh")
    refined_inverse_peak: float
    min_gap_ratio: float = Field(..., description="refined min neighbour distance / input one")


def _min_gap(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.min(np.hypot(np.diff(x), np.diff(y))))


def local_spacing_report(example: ExampleCurve, refined: RefinedCurve) -> LocalSpacingReport:
    """Compare the example's own mesh with the refined one at the same N."""
    n = refined.n
    original = example.sample(n)
    s_in = compute_geometry(original).s_alpha
    s_ref = compute_geometry(refined.to_curve_samples()).s_alpha
    inv_in = 1.0 / s_in
    inv_ref = 1.0 / s_ref
    return LocalSpacingReport(
        n=n,
        input_tail_ratio=spacing_tail_ratio(s_in),
        refined_tail_ratio=spacing_tail_ratio(s_ref),
        input_inverse_peak=float(inv_in.max() / inv_in.mean()),
        refined_inverse_peak=float(inv_ref.max() / inv_ref.mean()),
        min_gap_ratio=_min_gap(refined.x, refined.y) / _min_gap(original.x, original.y),
    )
