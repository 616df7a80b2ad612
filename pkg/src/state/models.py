"""
Pydantic documents for the artifacts exchanged between pipeline stages.

Invariants, spacing, validation reports and run summaries are written as
JSON documents so any stage can be rerun from the outputs of the previous
one.  Complex coefficients are stored as ``[re, im]`` pairs ordered
k = -k_max ... k_max - 1.

All models use Pydantic v2 syntax with validation and full JSON
serialization support.
"""

from __future__ import annotations

import uuid
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from src.evolution import SpacingState
from src.geometry import CurveKind
from src.invariants import ArclengthInvariants
from src.spectral.series import FourierSeries

SCHEMA_VERSION = 1


def _pairs(series: FourierSeries) -> List[List[float]]:
    return [[float(c.real), float(c.imag)] for c in series.coeffs]


def _series(pairs: List[List[float]]) -> FourierSeries:
    values = np.asarray(pairs, dtype=float)
    return FourierSeries(values[:, 0] + 1j * values[:, 1])


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

class InvariantsDocument(BaseModel):
    """Arclength invariants of one curve."""

    schema_version: int = Field(default=SCHEMA_VERSION)
    kind: CurveKind = Field(default=CurveKind.closed)
    L: float = Field(..., gt=0, description="Total length")
    k_max: int = Field(..., gt=0, description="Highest retained wavenumber")
    theta0: float = Field(..., description="Tangent angle at the base point")
    base_point: Tuple[float, float] = Field(..., description="Curve point at alpha = 0")
    slope_x: float = Field(default=0.0)
    slope_y: float = Field(default=0.0)
    cx: List[List[float]] = Field(..., description="[re, im] pairs of x(s) periodic part")
    cy: List[List[float]] = Field(..., description="[re, im] pairs of y(s) periodic part")
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("cx", "cy")
    @classmethod
    def _pairs_shape(cls, value: List[List[float]], info) -> List[List[float]]:
        if any(len(p) != 2 for p in value):
            raise ValueError(f"{info.field_name} entries must be [re, im] pairs")
        return value

    @model_validator(mode="after")
    def _band_matches(self) -> "InvariantsDocument":
        for name in ("cx", "cy"):
            if len(getattr(self, name)) != 2 * self.k_max:
                raise ValueError(
                    f"{name} has {len(getattr(self, name))} coefficients, expected 2*k_max = {2 * self.k_max}"
                )
        return self

    @classmethod
    def from_invariants(cls, inv: ArclengthInvariants) -> "InvariantsDocument":
        return cls(
            kind=inv.kind,
            L=inv.L,
            k_max=inv.k_max,
            theta0=inv.theta0,
            base_point=inv.base_point,
            slope_x=inv.slope_x,
            slope_y=inv.slope_y,
            cx=_pairs(inv.cx),
            cy=_pairs(inv.cy),
            provenance=dict(inv.provenance),
        )

    def to_invariants(self) -> ArclengthInvariants:
        return ArclengthInvariants(
            L=self.L,
            k_max=self.k_max,
            cx=_series(self.cx),
            cy=_series(self.cy),
            slope_x=self.slope_x,
            slope_y=self.slope_y,
            base_point=tuple(self.base_point),
            theta0=self.theta0,
            kind=self.kind,
            provenance=dict(self.provenance),
        )


# ---------------------------------------------------------------------------
# Spacing
# ---------------------------------------------------------------------------

class SpacingDocument(BaseModel):
    """Local spacing on the N2-point alpha-grid."""

    schema_version: int = Field(default=SCHEMA_VERSION)
    N2: int = Field(..., gt=0)
    t: float = Field(..., ge=0.0, le=1.0)
    s_alpha: List[float] = Field(...)
    monitor: str = Field(default="custom")
    residual: Optional[float] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _consistent(self) -> "SpacingDocument":
        if len(self.s_alpha) != self.N2:
            raise ValueError(f"s_alpha has {len(self.s_alpha)} values, expected N2 = {self.N2}")
        if self.N2 % 2:
            raise ValueError(f"N2 must be even, got {self.N2}")
        if min(self.s_alpha) <= 0.0:
            raise ValueError("s_alpha must be strictly positive")
        return self

    @classmethod
    def from_state(cls, state: SpacingState, monitor: str = "custom",
                   residual: Optional[float] = None) -> "SpacingDocument":
        return cls(
            N2=state.n,
            t=state.t,
            s_alpha=[float(v) for v in state.s_alpha],
            monitor=monitor,
            residual=residual,
        )

    def to_state(self) -> SpacingState:
        return SpacingState(self.t, np.asarray(self.s_alpha, dtype=float))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class ValidationReport(BaseModel):
    """Result of comparing two invariant files."""
    ref: str
    test: str
    l2_rel: float = Field(..., ge=0)
    linf_rel: float = Field(..., ge=0)
    length_rel: float = Field(..., ge=0)
    length_mismatch: bool = False
    dense_n: int = Field(..., gt=0)
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))


class RunSummary(BaseModel):
    """Diagnostics of one pipeline run."""

    trace_id: str = Field(default_factory=lambda: str(uuid.uuid4()))
    curve: str = Field(..., description="Example description or input path")
    monitor: str
    n1: int
    n_up: int
    k_max: int
    n2: int
    n3: int
    dt: float
    L: float
    l1_norm: float
    steps: int
    residual: float
    max_drift: float
    refined_residual: Optional[float] = None
    outputs: Dict[str, str] = Field(default_factory=dict)
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
