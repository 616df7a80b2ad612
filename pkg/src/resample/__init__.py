"""Resample the invariants at the equidistributing nodes."""

from src.resample.refine import RefinedCurve, refine

__all__ = ["RefinedCurve", "refine"]
