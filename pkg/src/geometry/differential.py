"""
Differential geometry of sampled curves.

Derivatives in alpha are spectral; derivatives in arclength use
d/ds = s_alpha^{-1} d/dalpha.  The tangent angle is obtained by spectral
integration of theta_alpha = s_alpha * kappa from a single base value at
alpha = 0, so no branch-cut unwrapping is needed.

Usage:
    from src.geometry import PlanarCurveSamples, compute_geometry

    geo = compute_geometry(curve)
    print(geo.L, geo.kappa.max())
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.errors import DegenerateCurveError, InvalidGridError, ParameterError
from src.geometry.curves import PlanarCurveSamples, periodic_parts
from src.observability.logger import get_logger
from src.observability.metrics import MetricsCollector
from src.observability.timing import timed_operation
from src.spectral.calculus import antiderivative, differentiate, forward_coeffs, inverse_samples
from src.spectral.series import TWO_PI, FourierSeries, SemiPeriodicField

logger = get_logger("geometry")

RESOLUTION_TAIL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CurveGeometry:
    """Local spacing, curvature, tangent angle and arclength map on the alpha-grid."""

    x_alpha: np.ndarray
    y_alpha: np.ndarray
    s_alpha: np.ndarray
    kappa: np.ndarray
    theta_field: SemiPeriodicField
    s_field: SemiPeriodicField
    L: float

    @property
    def n(self) -> int:
        return int(self.s_alpha.size)

    @property
    def theta(self) -> np.ndarray:
        return self.theta_field.samples(self.n)

    @property
    def s_of_alpha(self) -> np.ndarray:
        return self.s_field.samples(self.n)

    @property
    def turning_number(self) -> float:
        """(1/2 pi) times the integral of kappa ds."""
        return float(np.mean(self.kappa * self.s_alpha))


# ---------------------------------------------------------------------------
# Resolution check
# ---------------------------------------------------------------------------

def resolution_tail(samples: np.ndarray) -> float:
    """Largest coefficient with |k| >= 3n/8, relative to the largest overall."""
    series = forward_coeffs(samples)
    mags = np.abs(series.coeffs)
    peak = float(mags.max())
    if peak == 0.0:
        return 0.0
    tail = np.abs(series.wavenumbers) >= 3 * series.m // 8
    return float(mags[tail].max()) / peak


def _warn_if_unresolved(px: np.ndarray, py: np.ndarray) -> float:
    tail = max(resolution_tail(px), resolution_tail(py))
    if tail > RESOLUTION_TAIL_TOL:
        message = f"coefficient tail {tail:.3e} above {RESOLUTION_TAIL_TOL:g}"
        logger.warning("Curve not resolved at this grid size", extra_data={"tail": tail, "n": px.size})
        MetricsCollector().record_warning("geometry", "resolution_tail", message)
    return tail


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

def compute_geometry(curve: PlanarCurveSamples) -> CurveGeometry:
    """Spacing, curvature, angle and arclength of a sampled curve.

    Raises
    ------
    DegenerateCurveError
        If s_alpha <= 0 at some node.
    """
    with timed_operation("geometry", "compute_geometry", {"n": curve.n, "kind": curve.kind.value}) as op:
        n = curve.n
        px, py = periodic_parts(curve)
        _warn_if_unresolved(px, py)

        dx = differentiate(forward_coeffs(px))
        dy = differentiate(forward_coeffs(py))
        x_a = inverse_samples(dx, n) + curve.x_slope
        y_a = inverse_samples(dy, n)
        x_aa = inverse_samples(differentiate(dx), n)
        y_aa = inverse_samples(differentiate(dy), n)

        s_alpha = np.hypot(x_a, y_a)
        if s_alpha.min() <= 0.0:
            raise DegenerateCurveError(
                f"local spacing vanishes: min s_alpha = {s_alpha.min():.3e}"
            )
        kappa = (x_a * y_aa - y_a * x_aa) / s_alpha**3

        theta0 = float(np.arctan2(y_a[0], x_a[0]))
        theta_field = antiderivative(forward_coeffs(s_alpha * kappa))
        theta_field = theta_field + FourierSeries.constant(theta0, theta_field.m)
        s_field = antiderivative(forward_coeffs(s_alpha))
        L = TWO_PI * float(np.mean(s_alpha))

        op.summary = f"L={L:.15g} kappa=[{kappa.min():.4g}, {kappa.max():.4g}]"
        return CurveGeometry(x_a, y_a, s_alpha, kappa, theta_field, s_field, L)


def _resolve_geometry(geometry: Optional[CurveGeometry], curve: Optional[PlanarCurveSamples]) -> CurveGeometry:
    if geometry is None:
        if curve is None:
            raise ParameterError("need a geometry or a curve", component="geometry")
        return compute_geometry(curve)
    if curve is not None and curve.n != geometry.n:
        raise InvalidGridError(
            f"geometry on {geometry.n} nodes does not belong to a curve on {curve.n}", component="geometry"
        )
    return geometry


def unit_vectors(
    geometry: Optional[CurveGeometry] = None,
    curve: Optional[PlanarCurveSamples] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Unit normal and tangent, each of shape (2, n).

    t = (x_s, y_s) and n = (-y_s, x_s), so the unit circle traversed
    counterclockwise has t_s = kappa n with kappa = +1.  Either argument
    may be omitted; the geometry is computed from *curve* when missing.
    """
    geometry = _resolve_geometry(geometry, curve)
    tx = geometry.x_alpha / geometry.s_alpha
    ty = geometry.y_alpha / geometry.s_alpha
    return np.stack([-ty, tx]), np.stack([tx, ty])


def frenet_residual(
    geometry: Optional[CurveGeometry] = None,
    curve: Optional[PlanarCurveSamples] = None,
) -> float:
    """max |t_s - kappa n| over the grid."""
    geometry = _resolve_geometry(geometry, curve)
    normal, tangent = unit_vectors(geometry)
    n = geometry.n
    t_s = np.stack([
        inverse_samples(differentiate(forward_coeffs(tangent[i])), n) for i in range(2)
    ]) / geometry.s_alpha
    return float(np.max(np.abs(t_s - geometry.kappa * normal)))
