"""
Scenario: uniform monitor on the unit circle

With a constant monitor the equidistributed parametrization is the
arclength parametrization itself, so the whole pipeline must reduce to
the identity.  This is the smoke test of the toolkit.

Setup:
- Curve: unit circle sampled at 64 points, written to a curve file first
- Monitor: unit (phi* = 1)
- N1 = N2 = N3 = 64, dt = 0.25
- Outputs: curve file, invariants, spacing, refined curve, metrics
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from src.config.settings import build_pipeline_config
from src.state import write_curve_samples
from src.validation import get_example
from src.workflows import create_pipeline, identity_error

SCENARIO_NAME = "circle"
SCENARIO_TITLE = "Uniform Monitor on the Unit Circle (Identity Check)"

N_POINTS = 64
IDENTITY_TOL = 1e-12


def get_scenario_config(output_dir: str) -> dict:
    """Pipeline config mapping for this scenario.

    Parameters
    ----------
    output_dir : str
        Directory receiving every file the scenario writes.

    Returns
    -------
    dict
        Raw mapping accepted by :func:`build_pipeline_config`.
    """
    out = Path(output_dir)
    return {
        "curve": {"path": str(out / "circle64.csv")},
        "monitor": {"builtin": "unit"},
        "n1": N_POINTS,
        "n2": N_POINTS,
        "n3": N_POINTS,
        "dt": 0.25,
        "outputs": {
            "invariants": str(out / "circle64_invariants.json"),
            "spacing": str(out / "circle64_spacing.json"),
            "curve": str(out / "circle64_refined.csv"),
            "metrics": str(out / "circle64_metrics.json"),
        },
    }


def run_scenario(output_dir: str = "outputs") -> dict:
    """Write the circle, run the pipeline and collect the checks' inputs."""
    raw = get_scenario_config(output_dir)
    Path(output_dir).mkdir(parents=True, exist_ok=True)
    write_curve_samples(get_example("circle").sample(N_POINTS), raw["curve"]["path"])

    result = create_pipeline(build_pipeline_config(raw)).run()
    s_alpha = result.evolution.state.s_alpha
    return {
        "scenario": SCENARIO_NAME,
        "trace_id": result.summary.trace_id,
        "curve_file": raw["curve"]["path"],
        "outputs": result.summary.outputs,
        "L": result.invariants.L,
        "identity_error": identity_error(result),
        "spacing_spread": float(np.ptp(s_alpha)),
        "residual": result.evolution.residual,
    }


def validate_outputs(result: dict) -> dict:
    """Check the identity property and the written files.

    Parameters
    ----------
    result : dict
        The scenario execution result.

    Returns
    -------
    dict
        Validation results with pass/fail status for each check.
    """
    validations = {}
    outputs = result.get("outputs", {})

    validations["curve_file_written"] = Path(result.get("curve_file", "")).is_file()
    validations["invariants_written"] = Path(outputs.get("invariants", "")).is_file()
    validations["length_is_two_pi"] = abs(result.get("L", 0.0) - 2.0 * math.pi) < IDENTITY_TOL
    validations["spacing_stays_uniform"] = result.get("spacing_spread", 1.0) < IDENTITY_TOL
    validations["pipeline_is_identity"] = result.get("identity_error", 1.0) < IDENTITY_TOL
    validations["trace_generated"] = bool(result.get("trace_id"))

    return validations
