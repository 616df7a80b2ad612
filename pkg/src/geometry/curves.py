"""
Sampled planar curves.

A curve is stored as its coordinates at the equispaced parameter nodes
alpha_j = 2 pi j / n.  Two kinds are supported:

    closed     x, y both 2 pi-periodic in alpha
    hperiodic  x(alpha + 2 pi) = x(alpha) + 2 pi, y periodic

Spectral operations act on the periodic parts; the unit slope of a
horizontally periodic x is carried separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Tuple

import numpy as np

from src.errors import DegenerateCurveError, InvalidGridError
from src.spectral.series import UniformGrid, _frozen


class CurveKind(str, Enum):
    """Periodicity class of a sampled curve."""
    closed = "closed"
    hperiodic = "hperiodic"


@dataclass(frozen=True, eq=False)
class PlanarCurveSamples:
    """Coordinates of a curve at the nodes of ``UniformGrid(n)``."""

    x: np.ndarray
    y: np.ndarray
    kind: CurveKind = CurveKind.closed

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape:
            raise InvalidGridError(f"x and y must be 1-D of equal length, got {x.shape}, {y.shape}")
        UniformGrid(x.size)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise DegenerateCurveError("curve samples contain non-finite values")
        object.__setattr__(self, "x", _frozen(x))
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "kind", CurveKind(self.kind))

    @property
    def n(self) -> int:
        return int(self.x.size)

    @property
    def grid(self) -> UniformGrid:
        return UniformGrid(self.n)

    @property
    def alpha(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def x_slope(self) -> float:
        return 1.0 if self.kind is CurveKind.hperiodic else 0.0

    @property
    def base_point(self) -> Tuple[float, float]:
        return float(self.x[0]), float(self.y[0])

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]],
        n: int,
        kind: CurveKind = CurveKind.closed,
    ) -> "PlanarCurveSamples":
        """Sample ``fn(alpha) -> (x, y)`` on the n-point grid."""
        x, y = fn(UniformGrid(n).nodes)
        return cls(x, y, kind)


def periodic_parts(curve: PlanarCurveSamples) -> Tuple[np.ndarray, np.ndarray]:
    """(x - slope * alpha, y): the 2 pi-periodic parts of the coordinates."""
    return curve.x - curve.x_slope * curve.alpha, curve.y
