"""
Monitor function specifications.

A monitor is a strictly positive periodic function built from a constant,
periodized Gaussian kernels and cosine modes:

    phi(s) = constant
           + sum_g  A_g sum_j exp(-{b_g (s - c_g + P j)}^2)
           + sum_c  a_c cos(2 pi k_c s / P + phase_c)

where P is the period of the monitor's argument (2 pi for the
``normalized`` variable s' used by the presets, the curve length L for
``arclength`` monitors).

Usage:
    from src.monitor.spec import PRESETS, load_monitor

    spec = PRESETS["phi1"]
    spec = load_monitor("configs/my_monitor.json")
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Dict, List, Literal, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from src.errors import ArtifactFormatError, InvalidMonitorError


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

class GaussianTerm(BaseModel):
    """A * sum_j exp(-{width (s - center + P j)}^2)."""
    amplitude: float = Field(..., gt=0, description="Peak amplitude A")
    center: float = Field(..., description="Center c in one period")
    width: float = Field(..., gt=0, description="Inner width factor b")


class CosineTerm(BaseModel):
    """amplitude * cos(2 pi wavenumber s / P + phase)."""
    amplitude: float = Field(...)
    wavenumber: int = Field(..., ge=1)
    phase: float = Field(default=0.0)


class MonitorSpec(BaseModel):
    """Analytic monitor function."""

    name: str = Field(default="custom")
    constant: float = Field(default=0.0, ge=0)
    gaussians: List[GaussianTerm] = Field(default_factory=list)
    cosines: List[CosineTerm] = Field(default_factory=list)
    variable: Literal["normalized", "arclength"] = Field(
        default="normalized",
        description="Whether the argument is s' in [0, 2pi) or physical arclength in [0, L)",
    )

    model_config = {"json_schema_extra": {"examples": [
        {
            "name": "phi1",
            "constant": 1.0,
            "gaussians": [
                {"amplitude": 37.0, "center": 0.0, "width": 7.5},
                {"amplitude": 37.0, "center": math.pi, "width": 7.5},
            ],
        }
    ]}}

    @model_validator(mode="after")
    def _lower_bound_positive(self) -> "MonitorSpec":
        floor = self.constant - sum(abs(c.amplitude) for c in self.cosines)
        if floor <= 0 and not self.gaussians:
            raise ValueError(
                f"monitor is not strictly positive: constant {self.constant} "
                f"minus cosine amplitudes gives {floor}"
            )
        return self


class SampledMonitor(BaseModel):
    """Monitor values on a uniform grid in [0, 2pi) of the normalized variable."""
    name: str = Field(default="sampled")
    samples: List[float] = Field(..., min_length=4)


Monitor = Union[MonitorSpec, SampledMonitor]


def build_monitor_spec(data: Dict) -> MonitorSpec:
    """Validate a raw mapping, converting pydantic errors to :class:`InvalidMonitorError`."""
    try:
        return MonitorSpec.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or "monitor"
        raise InvalidMonitorError(f"{where}: {first.get('msg')}") from exc


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def _gaussian(amplitude: float, center: float, width: float) -> GaussianTerm:
    return GaussianTerm(amplitude=amplitude, center=center, width=width)


PRESETS: Dict[str, MonitorSpec] = {
    "unit": MonitorSpec(name="unit", constant=1.0),
    # 0.5 + 0.25 cos s
    "phi0": MonitorSpec(
        name="phi0", constant=0.5, cosines=[CosineTerm(amplitude=0.25, wavenumber=1)]
    ),
    # pinched droplet: waists at s' = 0 and s' = pi
    "phi1": MonitorSpec(
        name="phi1",
        constant=1.0,
        gaussians=[_gaussian(37.0, 0.0, 7.5), _gaussian(37.0, math.pi, 7.5)],
    ),
    # periodized peakons
    "phi2": MonitorSpec(
        name="phi2",
        constant=1.0,
        gaussians=[_gaussian(10.0, 0.4, 3.0), _gaussian(37.0, math.pi + 0.692, 7.5)],
    ),
}


def load_monitor(reference: str) -> Monitor:
    """Resolve a builtin preset name or read a JSON monitor file.

    A file either holds a :class:`MonitorSpec` document or a
    ``{"samples": [...]}`` document of values on a uniform grid.
    """
    if reference in PRESETS:
        return PRESETS[reference]
    path = Path(reference)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ArtifactFormatError(
            f"monitor '{reference}' is neither a builtin ({', '.join(PRESETS)}) nor a file"
        ) from exc
    except json.JSONDecodeError as exc:
        raise ArtifactFormatError(f"monitor file {reference} is not valid JSON: {exc}") from exc
    if "samples" in data:
        try:
            return SampledMonitor.model_validate({"name": path.stem, **data})
        except ValidationError as exc:
            raise InvalidMonitorError(f"monitor samples in {reference}: {exc.errors()[0]['msg']}") from exc
    return build_monitor_spec({"name": path.stem, **data})
