"""Monitor functions: periodized Gaussian superpositions and their normalization."""

from src.monitor.normalize import NormalizedMonitor, eval_monitor, monitor_from_samples, normalize
from src.monitor.spec import (
    PRESETS,
    CosineTerm,
    GaussianTerm,
    Monitor,
    MonitorSpec,
    SampledMonitor,
    build_monitor_spec,
    load_monitor,
)

__all__ = [
    "PRESETS",
    "CosineTerm",
    "GaussianTerm",
    "Monitor",
    "MonitorSpec",
    "SampledMonitor",
    "NormalizedMonitor",
    "build_monitor_spec",
    "eval_monitor",
    "load_monitor",
    "monitor_from_samples",
    "normalize",
]
