"""
Error hierarchy for the curve reparametrization toolkit.

Every failure raised by a numerical component or by the artifact / config
layer derives from :class:`ReparamError`.  Each class carries a
``category`` used by the CLI to pick an exit code and a ``component``
naming the module that raised it.  Subclasses also derive from the closest
builtin exception so callers may catch ``ValueError`` / ``RuntimeError``.

Usage:
    from src.errors import DownsampleForbiddenError, error_line

    try:
        inverse_samples(series, 4)
    except DownsampleForbiddenError as exc:
        print(error_line(exc))
"""

from __future__ import annotations

from typing import Optional


# ---------------------------------------------------------------------------
# Base
# ---------------------------------------------------------------------------

class ReparamError(Exception):
    """Base class for every error raised by the toolkit."""

    category: str = "numerical"
    component: str = "core"

    def __init__(self, message: str, component: Optional[str] = None) -> None:
        super().__init__(message)
        self.message = message
        if component is not None:
            self.component = component

    @property
    def exit_code(self) -> int:
        return 3 if self.category == "numerical" else 2


# ---------------------------------------------------------------------------
# spectral / nufft
# ---------------------------------------------------------------------------

class InvalidGridError(ReparamError, ValueError):
    """Grid size is odd or too small for a symmetric wavenumber range."""
    component = "spectral"


class DownsampleForbiddenError(ReparamError, ValueError):
    """Requested output grid is coarser than the series (silent aliasing)."""
    component = "spectral"


class NufftPlanError(ReparamError, ValueError):
    """NUFFT plan parameters outside the supported range."""
    component = "nufft"


# ---------------------------------------------------------------------------
# geometry / invariants
# ---------------------------------------------------------------------------

class DegenerateCurveError(ReparamError, ValueError):
    """The sampled curve is not an immersion (s_alpha <= 0 somewhere)."""
    component = "geometry"


class ResolutionError(ReparamError, RuntimeError):
    """Reconstruction defect exceeds tolerance (curve not resolved)."""
    component = "invariants"


class UndersampledExponentialError(ReparamError, ValueError):
    """Retained band exceeds what the upsampled grid can represent."""
    component = "invariants"


# ---------------------------------------------------------------------------
# monitor / evolution / resample
# ---------------------------------------------------------------------------

class InvalidMonitorError(ReparamError, ValueError):
    """Monitor specification has nonpositive amplitude or width."""
    category = "config"
    component = "monitor"


class MonitorPositivityError(ReparamError, ValueError):
    """Monitor function is not strictly positive."""
    component = "monitor"


class CurvaturePositivityError(ReparamError, RuntimeError):
    """Interpolated curvature lost positivity."""
    component = "evolution"


class MonotonicityLossError(ReparamError, RuntimeError):
    """The arclength map s(alpha) is no longer monotone on [0, 2pi]."""
    component = "evolution"


class SpacingPositivityError(ReparamError, RuntimeError):
    """Local spacing became nonpositive during time stepping."""
    component = "evolution"

    def __init__(self, message: str, t: float, component: Optional[str] = None) -> None:
        super().__init__(f"{message} (t={t:.6g})", component)
        self.t = t


class UnderResolutionError(ReparamError, ValueError):
    """Output grid smaller than the spacing grid."""
    component = "resample"


# ---------------------------------------------------------------------------
# validation / artifacts / config
# ---------------------------------------------------------------------------

class ParameterError(ReparamError, ValueError):
    """Example-curve or study parameter outside its admissible range."""
    category = "usage"
    component = "validation"


class ArtifactFormatError(ReparamError, ValueError):
    """An artifact file could not be parsed or failed schema validation."""
    category = "io"
    component = "state"


class ConfigError(ReparamError, ValueError):
    """Pipeline configuration violates an invariant."""
    category = "config"
    component = "config"


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def error_line(exc: BaseException) -> str:
    """Render *exc* as a single machine-parsable line."""
    if isinstance(exc, ReparamError):
        category, component = exc.category, exc.component
    else:
        category, component = "internal", "unknown"
    message = str(exc).replace("\n", " ").replace('"', "'")
    return (
        f"error category={category} component={component} "
        f'type={type(exc).__name__} message="{message}"'
    )
