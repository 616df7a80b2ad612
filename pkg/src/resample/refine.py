"""
Refined representation of the input curve.

The evolved spacing gives the non-dimensional factor
R = s_alpha / (2 pi mean(s_alpha)), shared by the monitor and its rescaled
counterpart, so the targets on the physical curve are
s(alpha_j) = L * int_0^alpha_j R.  The invariants are inverted there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.errors import UnderResolutionError
from src.evolution import SpacingState
from src.geometry import CurveKind, PlanarCurveSamples
from src.invariants import ArclengthInvariants, invert
from src.observability.timing import timed_operation
from src.spectral.calculus import antiderivative, forward_coeffs, upsample
from src.spectral.series import TWO_PI, UniformGrid


@dataclass(frozen=True, eq=False)
class RefinedCurve:
    """N3 points of the input curve at the equidistributing nodes."""

    x: np.ndarray
    y: np.ndarray
    s_targets: np.ndarray
    kind: CurveKind = CurveKind.closed
    provenance: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.x.size)

    @property
    def grid(self) -> UniformGrid:
        return UniformGrid(self.n)

    def to_curve_samples(self) -> PlanarCurveSamples:
        return PlanarCurveSamples(self.x, self.y, self.kind)


def refine(
    inv: ArclengthInvariants,
    spacing: SpacingState,
    n3: int,
    eps_rel: Optional[float] = None,
    monitor_name: str = "custom",
    trace_id: Optional[str] = None,
) -> RefinedCurve:
    """Resample the curve at n3 equidistributing nodes.

    Raises
    ------
    UnderResolutionError
        If n3 is smaller than the spacing grid.
    """
    if n3 < spacing.n:
        raise UnderResolutionError(f"n3={n3} must be >= n2={spacing.n}")
    UniformGrid(n3)
    with timed_operation("resample", "refine", {"n2": spacing.n, "n3": n3}, trace_id) as op:
        s_alpha = upsample(np.asarray(spacing.s_alpha), n3)
        ratio = s_alpha / (TWO_PI * float(np.mean(s_alpha)))
        s_targets = inv.L * antiderivative(forward_coeffs(ratio)).samples(n3)
        x, y = invert(inv, s_targets, eps_rel)
        op.summary = f"min_gap={np.min(np.diff(s_targets)):.3e}"
        provenance = {
            **inv.provenance,
            "n2": spacing.n,
            "n3": n3,
            "monitor": monitor_name,
        }
        return RefinedCurve(x, y, s_targets, inv.kind, provenance)
