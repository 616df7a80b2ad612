"""
Known data of the curvature-interpolated curve at one interpolation time.

The artificial curve X(s, t) has length 2 pi, starts at the origin and
has curvature

    kappa(s, t) = (1 - t) kappa0(s) + t kappa1(s),

where both end points have mean one (kappa0 = 1 for a cold start).  All
fields are formed on the uniform s-grid; the non-periodic ones (x_t, y_t
and the normal velocity U with its derivatives) are kept as semi-periodic
fields q(s) + s r(s) so they can be evaluated at moving nodes by a
Type-2 NUFFT.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.errors import CurvaturePositivityError
from src.monitor import NormalizedMonitor
from src.spectral.calculus import antiderivative, differentiate, forward_coeffs, inverse_samples
from src.spectral.series import FourierSeries, SemiPeriodicField


@dataclass(frozen=True, eq=False)
class EvolutionFields:
    """Series and semi-periodic fields of X(., t) on the n2-point s-grid."""

    t: float
    kappa: FourierSeries
    kappa_s: FourierSeries
    kappa_t: FourierSeries
    theta: SemiPeriodicField
    theta_t: SemiPeriodicField
    x_s: np.ndarray
    y_s: np.ndarray
    x_t: SemiPeriodicField
    y_t: SemiPeriodicField
    U: SemiPeriodicField
    U_s: SemiPeriodicField
    U_ss: SemiPeriodicField

    @property
    def n(self) -> int:
        return self.kappa.m


def endpoint_series(monitor: Optional[NormalizedMonitor], n2: int) -> FourierSeries:
    """phi* resized to n2 modes, or the unit curvature when *monitor* is None."""
    if monitor is None:
        return FourierSeries.constant(1.0, n2)
    return monitor.phi_star.resized(n2)


def build_fields(
    phi_star: NormalizedMonitor,
    t: float,
    n2: int,
    kappa0: Optional[NormalizedMonitor] = None,
) -> EvolutionFields:
    """Assemble the fields at interpolation time *t*.

    Raises
    ------
    CurvaturePositivityError
        If the interpolated curvature is not positive on the grid.
    """
    k0 = endpoint_series(kappa0, n2)
    k1 = endpoint_series(phi_star, n2)
    kappa = k0 * (1.0 - t) + k1 * t
    kappa_t = k1 - k0
    kappa_s = differentiate(kappa)

    kappa_g = inverse_samples(kappa, n2)
    if kappa_g.min() <= 0.0:
        raise CurvaturePositivityError(
            f"interpolated curvature not positive: min = {kappa_g.min():.3e} at t={t:.6g}"
        )
    kappa_s_g = inverse_samples(kappa_s, n2)

    theta = antiderivative(kappa)
    theta_t = antiderivative(kappa_t)
    theta_g = theta.samples(n2)
    theta_t_g = theta_t.samples(n2)
    x_s = np.cos(theta_g)
    y_s = np.sin(theta_g)

    x_t = antiderivative(forward_coeffs(-theta_t_g * y_s))
    y_t = antiderivative(forward_coeffs(theta_t_g * x_s))

    U = x_t.times_samples(-y_s) + y_t.times_samples(x_s)
    tangential = x_t.times_samples(x_s) + y_t.times_samples(y_s)
    U_s = tangential.times_samples(-kappa_g) + theta_t
    U_ss = (
        U.times_samples(-kappa_g * kappa_g)
        + (U_s - theta_t).times_samples(kappa_s_g / kappa_g)
        + kappa_t
    )
    return EvolutionFields(
        t=t,
        kappa=kappa,
        kappa_s=kappa_s,
        kappa_t=kappa_t,
        theta=theta,
        theta_t=theta_t,
        x_s=x_s,
        y_s=y_s,
        x_t=x_t,
        y_t=y_t,
        U=U,
        U_s=U_s,
        U_ss=U_ss,
    )
