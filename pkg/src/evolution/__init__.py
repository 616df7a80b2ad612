"""Equidistributing local spacing by curvature interpolation."""

from src.evolution.fields import EvolutionFields, build_fields
from src.evolution.stepper import (
    EvolutionResult,
    SpacingState,
    equidistribution_residual,
    evolve,
    rhs,
    runge_kutta4,
)

__all__ = [
    "EvolutionFields",
    "EvolutionResult",
    "SpacingState",
    "build_fields",
    "equidistribution_residual",
    "evolve",
    "rhs",
    "runge_kutta4",
]
