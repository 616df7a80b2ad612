"""Workflow implementations."""

from src.workflows.pipeline import (
    PipelineResult,
    ReparametrizationPipeline,
    create_pipeline,
    identity_error,
)

__all__ = ["PipelineResult", "ReparametrizationPipeline", "create_pipeline", "identity_error"]
