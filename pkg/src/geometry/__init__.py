"""Sampled planar curves and their differential geometry."""

from src.geometry.curves import CurveKind, PlanarCurveSamples, periodic_parts
from src.geometry.differential import (
    CurveGeometry,
    compute_geometry,
    frenet_residual,
    resolution_tail,
    unit_vectors,
)

__all__ = [
    "CurveKind",
    "PlanarCurveSamples",
    "periodic_parts",
    "CurveGeometry",
    "compute_geometry",
    "frenet_residual",
    "resolution_tail",
    "unit_vectors",
]
