"""
Builtin example curves with analytic evaluators.

    circle    x = R cos u, y = R sin u
    droplet   polar form r(eta) = 1 + eps_p P2(cos(eta - pi/4)),
              sampled at eta = u - pi/4 so the two waists sit at u = 0, pi
    peakons   graph y(x) = 2 sum_j exp(-sqrt((x - 0.5 + 2 pi j)^2 + eps_r))
                         + 4 sum_j exp(-sqrt({2 (x - 4 + 2 pi j)}^2 + eps_r))

Each example can sample itself, evaluate exact curvature and map points
on the curve back to their parameter, which gives pointwise error
oracles for the pipeline.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Dict, Optional, Tuple

import numpy as np

from src.errors import ParameterError
from src.geometry import CurveKind, PlanarCurveSamples
from src.spectral.series import TWO_PI, UniformGrid

IMAGE_TOL = 1e-15
DENSE_N = 1 << 16

Derivatives = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


class ExampleCurve(ABC):
    """Analytic curve u -> (x(u), y(u)) on u in [0, 2 pi)."""

    name: str = "example"
    kind: CurveKind = CurveKind.closed

    def __init__(self, params: Optional[Dict[str, float]] = None) -> None:
        self.params = dict(params or {})

    @abstractmethod
    def point(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Coordinates at parameter values *u*."""

    @abstractmethod
    def derivatives(self, u: np.ndarray) -> Derivatives:
        """(x', y', x'', y'') with respect to u."""

    @abstractmethod
    def parameter_of(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Parameter of the curve point nearest to (x, y), for points on or near the curve."""

    def sample(self, n: int) -> PlanarCurveSamples:
        x, y = self.point(UniformGrid(n).nodes)
        return PlanarCurveSamples(x, y, self.kind)

    def curvature(self, u: np.ndarray) -> np.ndarray:
        xp, yp, xpp, ypp = self.derivatives(np.asarray(u, dtype=float))
        return (xp * ypp - yp * xpp) / (xp * xp + yp * yp) ** 1.5

    def kappa_max(self, n_dense: int = DENSE_N) -> float:
        """max |kappa| over a dense parameter grid."""
        return float(np.max(np.abs(self.curvature(UniformGrid(n_dense).nodes))))

    def analytic_error(self, x: np.ndarray, y: np.ndarray) -> float:
        """max distance from the points to the exact curve, relative to max |coordinate|."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        xe, ye = self.point(self.parameter_of(x, y))
        scale = max(float(np.max(np.abs(xe))), float(np.max(np.abs(ye))))
        return float(np.max(np.hypot(x - xe, y - ye))) / scale

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
        return f"{self.name}({inner})"


# ---------------------------------------------------------------------------
# Circle
# ---------------------------------------------------------------------------

class CircleExample(ExampleCurve):
    name = "circle"

    def __init__(self, params: Optional[Dict[str, float]] = None) -> None:
        super().__init__(params)
        self.radius = float(self.params.setdefault("radius", 1.0))
        if self.radius <= 0:
            raise ParameterError(f"circle radius must be positive, got {self.radius}")

    def point(self, u):
        return self.radius * np.cos(u), self.radius * np.sin(u)

    def derivatives(self, u):
        c, s = np.cos(u), np.sin(u)
        return -self.radius * s, self.radius * c, -self.radius * c, -self.radius * s

    def parameter_of(self, x, y):
        return np.mod(np.arctan2(y, x), TWO_PI)


# ---------------------------------------------------------------------------
# Droplet
# ---------------------------------------------------------------------------

class DropletExample(ExampleCurve):
    """Linearized droplet shape; eps_p -> 2 pinches the waist."""

    name = "droplet"

    def __init__(self, params: Optional[Dict[str, float]] = None) -> None:
        super().__init__(params)
        self.eps_p = float(self.params.setdefault("eps_p", 2.0 / 7.0))
        if not 0.0 <= self.eps_p < 2.0:
            raise ParameterError(f"droplet eps_p must lie in [0, 2), got {self.eps_p}")

    @staticmethod
    def eta(u):
        return np.asarray(u, dtype=float) - np.pi / 4

    def radius(self, eta):
        """r, r', r'' in the polar angle."""
        phase = eta - np.pi / 4
        c, s = np.cos(phase), np.sin(phase)
        r = 1.0 + self.eps_p * 0.5 * (3.0 * c * c - 1.0)
        dr = -3.0 * self.eps_p * c * s
        ddr = -3.0 * self.eps_p * np.cos(2.0 * phase)
        return r, dr, ddr

    def point(self, u):
        eta = self.eta(u)
        r, _, _ = self.radius(eta)
        return r * np.cos(eta), r * np.sin(eta)

    def derivatives(self, u):
        eta = self.eta(u)
        r, dr, ddr = self.radius(eta)
        c, s = np.cos(eta), np.sin(eta)
        xp = dr * c - r * s
        yp = dr * s + r * c
        xpp = ddr * c - 2.0 * dr * s - r * c
        ypp = ddr * s + 2.0 * dr * c - r * s
        return xp, yp, xpp, ypp

    def curvature(self, u):
        r, dr, ddr = self.radius(self.eta(u))
        return (r * r + 2.0 * dr * dr - r * ddr) / (r * r + dr * dr) ** 1.5

    def parameter_of(self, x, y):
        return np.mod(np.arctan2(y, x) + np.pi / 4, TWO_PI)

    def local_spacing(self, u):
        """s_eta = sqrt(r^2 + r_eta^2) of the polar representation."""
        r, dr, _ = self.radius(self.eta(u))
        return np.sqrt(r * r + dr * dr)


# ---------------------------------------------------------------------------
# Peakons
# ---------------------------------------------------------------------------

_PEAKON_TERMS = ((2.0, 1.0, 0.5), (4.0, 2.0, 4.0))  # amplitude, rate, center


class PeakonsExample(ExampleCurve):
    """Two rounded, periodized peakons in graph form (x, y(x))."""

    name = "peakons"
    kind = CurveKind.hperiodic

    def __init__(self, params: Optional[Dict[str, float]] = None) -> None:
        super().__init__(params)
        self.eps_r = float(self.params.setdefault("eps_r", 1e-2))
        if self.eps_r <= 0.0:
            raise ParameterError(f"peakons eps_r must be positive, got {self.eps_r}")

    def _graph(self, x):
        """y, y', y'' of the periodized graph."""
        x = np.asarray(x, dtype=float)
        y = np.zeros_like(x)
        dy = np.zeros_like(x)
        ddy = np.zeros_like(x)
        for amplitude, rate, center in _PEAKON_TERMS:
            d = x - center
            d0 = d - TWO_PI * np.round(d / TWO_PI)
            images = [0]
            j = 1
            while amplitude * np.exp(-rate * (TWO_PI * j - np.pi)) >= IMAGE_TOL:
                images += [j, -j]
                j += 1
            for j in images:
                u = d0 + TWO_PI * j
                rho = np.sqrt((rate * u) ** 2 + self.eps_r)
                g = amplitude * np.exp(-rho)
                drho = rate * rate * u / rho
                ddrho = rate * rate * self.eps_r / rho**3
                y += g
                dy += -drho * g
                ddy += (drho * drho - ddrho) * g
        return y, dy, ddy

    def point(self, u):
        u = np.asarray(u, dtype=float)
        return u.copy(), self._graph(u)[0]

    def derivatives(self, u):
        _, dy, ddy = self._graph(u)
        return np.ones_like(dy), dy, np.zeros_like(dy), ddy

    def curvature(self, u):
        _, dy, ddy = self._graph(u)
        return ddy / (1.0 + dy * dy) ** 1.5

    def parameter_of(self, x, y):
        return np.asarray(x, dtype=float)

    def analytic_error(self, x, y):
        ye = self._graph(x)[0]
        return float(np.max(np.abs(np.asarray(y) - ye))) / float(np.max(np.abs(ye)))

    def local_spacing(self, u):
        """s_x = sqrt(1 + y_x^2) of the graph representation."""
        _, dy, _ = self._graph(u)
        return np.sqrt(1.0 + dy * dy)


EXAMPLES = {
    "circle": CircleExample,
    "droplet": DropletExample,
    "peakons": PeakonsExample,
}


def get_example(name: str, params: Optional[Dict[str, float]] = None) -> ExampleCurve:
    """Instantiate a builtin example; raises :class:`ParameterError` for unknown names."""
    try:
        cls = EXAMPLES[name]
    except KeyError as exc:
        raise ParameterError(f"unknown example '{name}'; choose from {', '.join(EXAMPLES)}") from exc
    return cls(params)


def make_example(name: str, params: Optional[Dict[str, float]], n: int) -> PlanarCurveSamples:
    """Sample a builtin example at n equispaced parameter values."""
    return get_example(name, params).sample(n)
