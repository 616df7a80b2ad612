"""Runtime settings and pipeline configuration."""

from src.config.settings import (
    CurveSource,
    MonitorSource,
    OutputPaths,
    PipelineConfig,
    RuntimeSettings,
    build_pipeline_config,
    get_settings,
    load_pipeline_config,
    reload_settings,
)

__all__ = [
    "CurveSource",
    "MonitorSource",
    "OutputPaths",
    "PipelineConfig",
    "RuntimeSettings",
    "build_pipeline_config",
    "get_settings",
    "load_pipeline_config",
    "reload_settings",
]
