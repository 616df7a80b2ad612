"""Analytic test curves shared by several test modules."""

import numpy as np


def ellipse(a: float = 2.0, b: float = 1.0):
    """Counterclockwise ellipse x = a cos alpha, y = b sin alpha."""
    return lambda alpha: (a * np.cos(alpha), b * np.sin(alpha))


def ellipse_length(a: float = 2.0, b: float = 1.0) -> float:
    """Perimeter by adaptive quadrature."""
    from scipy.integrate import quad

    value, _ = quad(
        lambda t: np.hypot(a * np.sin(t), b * np.cos(t)),
        0.0, 2.0 * np.pi, epsabs=1e-15, epsrel=1e-15, limit=200,
    )
    return value


def cosine_arclength_nodes(t: float, n: int, amplitude: float = 0.5) -> np.ndarray:
    """Roots of s + amplitude t sin(s) = alpha_j on the n-point grid.

    These are the equidistributed arclength nodes for the curvature
    1 + amplitude t cos(s) on a curve of length 2 pi.
    """
    from scipy.optimize import brentq

    c = amplitude * t
    alpha = np.arange(n) * (2.0 * np.pi / n)
    return np.array([
        brentq(lambda s: s + c * np.sin(s) - a, a - 1.0, a + 1.0, xtol=1e-15, rtol=1e-15)
        for a in alpha
    ])


def cosine_spacing(t: float, n: int, amplitude: float = 0.5) -> np.ndarray:
    """s_alpha = 1 / (1 + amplitude t cos s) at the equidistributed nodes."""
    s = cosine_arclength_nodes(t, n, amplitude)
    return 1.0 / (1.0 + amplitude * t * np.cos(s))
