"""
Monitor evaluation and L1-type normalization.

The normalized monitor phi* = 2 pi phi / ||phi||_{L1} lives on the
rescaled arclength s' = 2 pi s / L in [0, 2 pi) and has mean exactly one,
so the curve with curvature phi* turns once per period.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import InvalidMonitorError, MonitorPositivityError
from src.monitor.spec import Monitor, MonitorSpec, SampledMonitor
from src.observability.timing import timed_operation
from src.spectral.calculus import differentiate, forward_coeffs, inverse_samples
from src.spectral.series import TWO_PI, FourierSeries, UniformGrid

IMAGE_TOL = 1e-15


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _periodized_gaussian(d: np.ndarray, width: float, period: float) -> np.ndarray:
    """sum_j exp(-{width (d + period j)}^2), images added until below IMAGE_TOL."""
    d0 = d - period * np.round(d / period)
    out = np.exp(-(width * d0) ** 2)
    j = 1
    # |d0| <= period/2, so image j lies at least (j - 1/2) periods away
    while np.exp(-(width * period * (j - 0.5)) ** 2) >= IMAGE_TOL:
        out += np.exp(-(width * (d0 + period * j)) ** 2)
        out += np.exp(-(width * (d0 - period * j)) ** 2)
        j += 1
    return out


def eval_monitor(spec: MonitorSpec, points: np.ndarray, period: float = TWO_PI) -> np.ndarray:
    """Pointwise values of an analytic monitor.

    Parameters
    ----------
    spec:
        Monitor specification.
    points:
        Arguments of the monitor (any real values; the monitor is periodic).
    period:
        Period of the argument; 2 pi for normalized monitors.
    """
    s = np.asarray(points, dtype=float)
    values = np.full(s.shape, spec.constant, dtype=float)
    for g in spec.gaussians:
        if g.amplitude <= 0 or g.width <= 0:
            raise InvalidMonitorError(f"gaussian term needs positive amplitude and width, got {g}")
        values += g.amplitude * _periodized_gaussian(s - g.center, g.width, period)
    for c in spec.cosines:
        values += c.amplitude * np.cos(TWO_PI * c.wavenumber * s / period + c.phase)
    return values


# ---------------------------------------------------------------------------
# Normalized monitor
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NormalizedMonitor:
    """phi* on s' in [0, 2 pi) with unit mean."""

    phi_star: FourierSeries
    l1_norm: float
    name: str = "custom"

    @property
    def n(self) -> int:
        return self.phi_star.m

    def samples(self, n: Optional[int] = None) -> np.ndarray:
        return inverse_samples(self.phi_star, n or self.n)

    def derivative(self) -> FourierSeries:
        return differentiate(self.phi_star)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Direct summation of the series at arbitrary points (real part)."""
        return self.phi_star.evaluate(points).real

    @property
    def mean(self) -> float:
        return float(self.phi_star.mean.real)

    @property
    def max_over_mean(self) -> float:
        return float(self.samples(4 * self.n).max()) / self.mean


def _normalized_from_samples(values: np.ndarray, n: int, name: str) -> NormalizedMonitor:
    if values.min() <= 0.0:
        raise MonitorPositivityError(f"monitor '{name}' is not positive: min = {values.min():.3e}")
    series = forward_coeffs(values)
    if series.m != n:
        series = series.resized(n)
    # trapezoidal rule on the uniform s'-grid
    l1_norm = TWO_PI * float(series.mean.real)
    coeffs = np.array(series.coeffs) * (TWO_PI / l1_norm)
    coeffs[n // 2] = 1.0
    phi_star = FourierSeries(coeffs)
    dense = inverse_samples(phi_star, 4 * n)
    if dense.min() <= 0.0:
        raise MonitorPositivityError(
            f"normalized monitor '{name}' loses positivity between nodes: min = {dense.min():.3e}"
        )
    return NormalizedMonitor(phi_star=phi_star, l1_norm=l1_norm, name=name)


def normalize(monitor: Monitor, L: float, n: int) -> NormalizedMonitor:
    """Rescale to s' = 2 pi s / L and apply the L1-type normalization.

    Parameters
    ----------
    monitor:
        Analytic spec or sampled values.
    L:
        Length of the input curve; only used for ``arclength`` monitors.
    n:
        Size of the uniform s'-grid (normally the spacing grid size N2).
    """
    with timed_operation("monitor", "normalize", {"name": monitor.name, "n": n, "L": L}) as op:
        if isinstance(monitor, SampledMonitor):
            result = monitor_from_samples(np.asarray(monitor.samples), n, monitor.name)
        else:
            s_prime = UniformGrid(n).nodes
            if monitor.variable == "arclength":
                values = eval_monitor(monitor, s_prime * (L / TWO_PI), period=L)
            else:
                values = eval_monitor(monitor, s_prime)
            result = _normalized_from_samples(values, n, monitor.name)
        op.summary = f"l1_norm={result.l1_norm:.12g}"
        return result


def monitor_from_samples(values: np.ndarray, n: Optional[int] = None, name: str = "sampled") -> NormalizedMonitor:
    """Normalize monitor values given on a uniform s'-grid, Fourier-resized to n."""
    values = np.asarray(values, dtype=float)
    return _normalized_from_samples(values, n or values.size, name)
