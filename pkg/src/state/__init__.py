"""Artifact schemas and file I/O."""

from src.state.artifacts import (
    read_curve,
    read_document,
    read_invariants,
    read_spacing,
    write_curve,
    write_curve_samples,
    write_document,
    write_invariants,
    write_spacing,
)
from src.state.models import (
    InvariantsDocument,
    RunSummary,
    SpacingDocument,
    ValidationReport,
)

__all__ = [
    "InvariantsDocument",
    "RunSummary",
    "SpacingDocument",
    "ValidationReport",
    "read_curve",
    "read_document",
    "read_invariants",
    "read_spacing",
    "write_curve",
    "write_curve_samples",
    "write_document",
    "write_invariants",
    "write_spacing",
]
