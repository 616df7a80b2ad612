"""
Runtime settings and pipeline configuration.

Runtime settings come from the environment (or a ``.env`` file in the
working directory) so logging and backend choices can be switched without
code changes.  Pipeline configuration comes from a JSON config file with
command-line overrides applied on top.

Environment Variables
---------------------
REPARAM_LOG_LEVEL : str
    Console log level ("DEBUG", "INFO", ...).  Defaults to "INFO".
REPARAM_LOG_DIR : str, optional
    When set, JSON log records are also appended to ``<dir>/reparam.log``.
REPARAM_NUFFT_BACKEND : str
    "gaussian" (built-in gridding, default) or "finufft" (requires the
    optional ``finufft`` package).
REPARAM_DEFAULT_EPS : float
    Default requested NUFFT accuracy.  Defaults to 1e-15.
REPARAM_OVERSAMPLING : float
    NUFFT fine-grid oversampling factor.  Defaults to 2.0.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.errors import ArtifactFormatError, ConfigError

EPS_MIN = 1e-15
EPS_MAX = 1e-2


# ---------------------------------------------------------------------------
# Runtime settings
# ---------------------------------------------------------------------------

class RuntimeSettings(BaseSettings):
    """Process-wide settings read from ``REPARAM_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="REPARAM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = Field(default="INFO", description="Console log level")
    log_dir: Optional[str] = Field(default=None, description="Directory for the JSON log file")
    nufft_backend: Literal["gaussian", "finufft"] = Field(
        default="gaussian", description="NUFFT implementation"
    )
    default_eps: float = Field(default=1e-15, ge=EPS_MIN, le=EPS_MAX)
    oversampling: float = Field(default=2.0, ge=2.0, description="NUFFT oversampling factor")


@lru_cache(maxsize=1)
def get_settings() -> RuntimeSettings:
    """Return the cached runtime settings."""
    return RuntimeSettings()


def reload_settings() -> RuntimeSettings:
    """Drop the cached settings and re-read the environment."""
    get_settings.cache_clear()
    return get_settings()


# ---------------------------------------------------------------------------
# Pipeline configuration
# ---------------------------------------------------------------------------

class CurveSource(BaseModel):
    """Where the input curve comes from: a builtin example or a curve file."""
    example: Optional[str] = Field(default=None, description="circle | droplet | peakons")
    params: Dict[str, float] = Field(default_factory=dict, description="Example parameters")
    path: Optional[str] = Field(default=None, description="Delimited curve file")

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "CurveSource":
        if (self.example is None) == (self.path is None):
            raise ValueError("curve source needs exactly one of 'example' or 'path'")
        return self


class MonitorSource(BaseModel):
    """A builtin monitor name (phi0, phi1, phi2, unit) or a monitor file."""
    builtin: Optional[str] = Field(default=None)
    path: Optional[str] = Field(default=None)

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "MonitorSource":
        if (self.builtin is None) == (self.path is None):
            raise ValueError("monitor source needs exactly one of 'builtin' or 'path'")
        return self

    @property
    def reference(self) -> str:
        return self.builtin if self.builtin is not None else str(self.path)


class OutputPaths(BaseModel):
    """Files written by the pipeline; unset entries are skipped."""
    invariants: Optional[str] = None
    spacing: Optional[str] = None
    curve: Optional[str] = None
    metrics: Optional[str] = None


class PipelineConfig(BaseModel):
    """Full parameter set of one extract -> evolve -> refine run."""

    curve: CurveSource
    monitor: MonitorSource
    n1: int = Field(..., gt=0, description="Input sample count")
    n2: int = Field(..., gt=0, description="Spacing grid size for the evolution")
    n3: int = Field(..., gt=0, description="Refined output size")
    n_up: Optional[int] = Field(default=None, description="Upsampled grid for extraction")
    k_max: Optional[int] = Field(default=None, description="Highest retained wavenumber")
    dt: float = Field(..., description="RK4 step size")
    eps_rel: float = Field(default=1e-15, description="Requested NUFFT accuracy")
    outputs: OutputPaths = Field(default_factory=OutputPaths)

    model_config = {"json_schema_extra": {"examples": [
        {
            "curve": {"example": "droplet", "params": {"eps_p": 1.7}},
            "monitor": {"builtin": "phi1"},
            "n1": 32768, "n_up": 65536, "k_max": 16384,
            "n2": 2048, "dt": 1e-4, "n3": 2048, "eps_rel": 1e-15,
        }
    ]}}

    @field_validator("n1", "n2", "n3")
    @classmethod
    def _even(cls, value: int, info) -> int:
        if value % 2:
            raise ValueError(f"{info.field_name} must be even, got {value}")
        return value

    @field_validator("dt")
    @classmethod
    def _dt_range(cls, value: float) -> float:
        if not 0.0 < value <= 0.25:
            raise ValueError(f"dt must lie in (0, 0.25], got {value}")
        return value

    @field_validator("eps_rel")
    @classmethod
    def _eps_range(cls, value: float) -> float:
        if not EPS_MIN <= value <= EPS_MAX:
            raise ValueError(f"eps_rel must lie in [{EPS_MIN}, {EPS_MAX}], got {value}")
        return value

    @model_validator(mode="after")
    def _cross_field(self) -> "PipelineConfig":
        if self.n3 < self.n2:
            raise ValueError(f"n3 ({self.n3}) must be >= n2 ({self.n2})")
        if self.n_up is not None:
            if self.n_up % 2:
                raise ValueError(f"n_up must be even, got {self.n_up}")
            if self.n_up < self.n1:
                raise ValueError(f"n_up ({self.n_up}) must be >= n1 ({self.n1})")
        if self.k_max is not None:
            if self.k_max <= 0:
                raise ValueError(f"k_max must be positive, got {self.k_max}")
            if self.n_up is not None and self.k_max > self.n_up // 2:
                raise ValueError(f"k_max ({self.k_max}) must be <= n_up/2 ({self.n_up // 2})")
        return self

    @property
    def resolved_k_max(self) -> int:
        return self.k_max if self.k_max is not None else self.n1 // 2


def build_pipeline_config(data: Dict[str, Any]) -> PipelineConfig:
    """Validate a raw mapping, converting pydantic errors to :class:`ConfigError`."""
    try:
        return PipelineConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or "config"
        raise ConfigError(f"{where}: {first.get('msg')}") from exc


def load_pipeline_config(
    path: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> PipelineConfig:
    """Read a JSON config file and apply overrides (overrides win).

    Parameters
    ----------
    path:
        Config file path; ``None`` starts from an empty mapping.
    overrides:
        Flat or nested values; ``None`` entries are ignored.
    """
    data: Dict[str, Any] = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise ArtifactFormatError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ArtifactFormatError(f"config file {path} is not valid JSON: {exc}") from exc
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(data.get(key), dict):
            data[key] = {**data[key], **{k: v for k, v in value.items() if v is not None}}
        else:
            data[key] = value
    return build_pipeline_config(data)
