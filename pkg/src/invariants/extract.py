"""
Invariant arclength-parametrization coefficients of a sampled curve.

The curvature is transformed to the arclength variable by a Type-1 NUFFT;
the tangent angle, and from it the coordinates, are recovered by spectral
integration of theta_s = kappa on a uniform arclength grid.  The result
is pinned to the input's base point and base angle at alpha = 0.

Usage:
    from src.invariants import extract, invert

    inv = extract(curve, n_up=512, k_max=128)
    x, y = invert(inv, np.linspace(0.0, inv.L, 100, endpoint=False))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.errors import DegenerateCurveError, ResolutionError
from src.geometry import CurveKind, PlanarCurveSamples, compute_geometry
from src.invariants.arclength import arclength_coeffs, default_n_up
from src.nufft import nufft_type2_many
from src.observability.metrics import MetricsCollector
from src.observability.timing import timed_operation
from src.spectral.calculus import antiderivative, forward_coeffs, inverse_samples
from src.spectral.series import TWO_PI, FourierSeries


CLOSURE_TOL = 1e-6
TURNING_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ArclengthInvariants:
    """x(s) = slope_x s + cx(2 pi s / L), y(s) = slope_y s + cy(2 pi s / L)."""

    L: float
    k_max: int
    cx: FourierSeries
    cy: FourierSeries
    slope_x: float
    slope_y: float
    base_point: Tuple[float, float]
    theta0: float
    kind: CurveKind = CurveKind.closed
    provenance: dict = field(default_factory=dict)


def _turning_target(kind: CurveKind) -> float:
    return 1.0 if kind is CurveKind.closed else 0.0


def _pin_turning(kappa_hat: FourierSeries, L: float, kind: CurveKind) -> FourierSeries:
    """Replace the mean curvature by its exact value for the curve class."""
    turning = L * kappa_hat.mean.real / TWO_PI
    target = _turning_target(kind)
    if abs(turning - target) > TURNING_TOL:
        hint = " (closed inputs must be simple and counterclockwise)" if kind is CurveKind.closed else ""
        raise DegenerateCurveError(
            f"turning number {turning:.8f} differs from {target:g}{hint}", component="invariants"
        )
    coeffs = np.array(kappa_hat.coeffs)
    coeffs[kappa_hat.m // 2] = TWO_PI * target / L
    return FourierSeries(coeffs)


def extract(
    curve: PlanarCurveSamples,
    n_up: Optional[int] = None,
    k_max: Optional[int] = None,
    eps_rel: Optional[float] = None,
    trace_id: Optional[str] = None,
) -> ArclengthInvariants:
    """Compute the arclength invariants of a curve sampled at N1 = curve.n nodes.

    Parameters
    ----------
    curve:
        Input samples; closed curves must be counterclockwise.
    n_up:
        Upsampled grid for the Type-1 sums; defaults to :func:`default_n_up`.
    k_max:
        Retained band; defaults to N1 / 2.
    eps_rel:
        Requested NUFFT accuracy.

    Raises
    ------
    ResolutionError
        If the reconstructed curve fails to close (or to advance by one
        period for horizontally periodic curves) to 1e-6 L.
    """
    n1 = curve.n
    n_up = n_up or default_n_up(n1, curve.kind)
    k_max = k_max or n1 // 2
    params = {"n1": n1, "n_up": n_up, "k_max": k_max, "kind": curve.kind.value}
    with timed_operation("invariants", "extract", params, trace_id) as op:
        geo = compute_geometry(curve)
        L = geo.L
        kappa_hat = _pin_turning(arclength_coeffs(geo.kappa, geo, n_up, k_max, eps_rel), L, curve.kind)

        m = 2 * k_max
        theta0 = float(np.arctan2(geo.y_alpha[0], geo.x_alpha[0]))
        theta = theta0 + (L / TWO_PI) * antiderivative(kappa_hat).samples(m)

        x_int = antiderivative(forward_coeffs(np.cos(theta)))
        y_int = antiderivative(forward_coeffs(np.sin(theta)))
        # advance of each coordinate over one period, ideally (0, 0) or (2 pi, 0)
        advance_x = L * x_int.slope.mean.real
        advance_y = L * y_int.slope.mean.real
        target_x = TWO_PI * curve.x_slope
        defect = float(np.hypot(advance_x - target_x, advance_y))
        MetricsCollector().record_diagnostic("closure_defect", defect / L)
        if defect > CLOSURE_TOL * L:
            raise ResolutionError(
                f"closure defect {defect:.3e} exceeds {CLOSURE_TOL:g} L (L={L:.6g}); "
                f"increase N1 or n_up"
            )

        x0, y0 = curve.base_point
        scale = L / TWO_PI
        cx = x_int.periodic * scale + x0
        cy = y_int.periodic * scale + y0
        slope_x = target_x / L

        inv = ArclengthInvariants(
            L=L,
            k_max=k_max,
            cx=cx,
            cy=cy,
            slope_x=slope_x,
            slope_y=0.0,
            base_point=(x0, y0),
            theta0=theta0,
            kind=curve.kind,
            provenance={"n1": n1, "n_up": n_up},
        )
        op.summary = f"L={L:.15g} closure_defect={defect:.3e}"
        return inv


def invert(
    inv: ArclengthInvariants,
    s_targets: np.ndarray,
    eps_rel: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate the arclength parametrization at arclength values s in [0, L]."""
    s = np.asarray(s_targets, dtype=float).ravel()
    with timed_operation("invariants", "invert", {"n": s.size, "k_max": inv.k_max}):
        values = nufft_type2_many(TWO_PI * s / inv.L, [inv.cx, inv.cy], eps_rel=eps_rel).real
        return inv.slope_x * s + values[0], inv.slope_y * s + values[1]


def sample_uniform(inv: ArclengthInvariants, n: Optional[int] = None) -> PlanarCurveSamples:
    """The arclength parametrization sampled at n equispaced arclengths (defaults to 2 k_max).

    The parameter is rescaled to alpha = 2 pi s / L so the samples form a
    valid :class:`PlanarCurveSamples` of the same kind.
    """
    n = n or 2 * inv.k_max
    sigma = np.arange(n) * (TWO_PI / n)
    x = inverse_samples(inv.cx, n) + inv.slope_x * inv.L * sigma / TWO_PI
    y = inverse_samples(inv.cy, n)
    return PlanarCurveSamples(x, y, inv.kind)
