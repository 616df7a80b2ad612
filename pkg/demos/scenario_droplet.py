"""
Scenario: pinched droplet refined toward its waists

A desk-scale version of the droplet run: the polar-sampled droplet is
reparametrized so mesh points cluster at the two high-curvature waists,
following the two-Gaussian monitor phi1.

Setup:
- Curve: droplet, eps_p = 1.3 (waist radius 0.35), N1 = 8192
- Monitor: phi1 (Gaussians of amplitude 37 centred on the waists)
- N2 = 1024, dt = 1e-3, N3 = 1024
- Outputs: invariants, spacing, refined curve, metrics
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from src.config.settings import build_pipeline_config
from src.validation import get_example, local_spacing_report
from src.workflows import create_pipeline

SCENARIO_NAME = "droplet"
SCENARIO_TITLE = "Pinched Droplet Refined Toward Its Waists"

EXAMPLE_PARAMS = {"eps_p": 1.3}
RESIDUAL_TOL = 1e-6
DRIFT_TOL = 1e-10
ON_CURVE_TOL = 1e-8


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
        "curve": {"example": "droplet", "params": EXAMPLE_PARAMS},
        "monitor": {"builtin": "phi1"},
        "n1": 8192,
        "n2": 1024,
        "n3": 1024,
        "dt": 1e-3,
        "outputs": {
            "invariants": str(out / "droplet13_invariants.json"),
            "spacing": str(out / "droplet13_spacing.json"),
            "curve": str(out / "droplet13_refined.csv"),
            "metrics": str(out / "droplet13_metrics.json"),
        },
    }


def run_scenario(output_dir: str = "outputs") -> dict:
    """Run the pipeline and measure the refined mesh against the exact droplet."""
    Path(output_dir).mkdir(parents=True, exist_ok=True)
    result = create_pipeline(build_pipeline_config(get_scenario_config(output_dir))).run()
    example = get_example("droplet", EXAMPLE_PARAMS)
    report = local_spacing_report(example, result.refined)
    s_alpha = result.evolution.state.s_alpha
    return {
        "scenario": SCENARIO_NAME,
        "trace_id": result.summary.trace_id,
        "outputs": result.summary.outputs,
        "kappa_max": example.kappa_max(),
        "residual": result.evolution.residual,
        "max_drift": result.evolution.max_drift,
        "min_spacing": float(np.min(s_alpha)),
        "on_curve_error": example.analytic_error(result.refined.x, result.refined.y),
        "spacing_report": report.model_dump(),
    }


def validate_outputs(result: dict) -> dict:
    """Check equidistribution quality and clustering at the waists.

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
    report = result.get("spacing_report", {})

    validations["residual_small"] = result.get("residual", 1.0) < RESIDUAL_TOL
    validations["spacing_positive"] = result.get("min_spacing", 0.0) > 0.0
    validations["mean_spacing_preserved"] = result.get("max_drift", 1.0) < DRIFT_TOL
    validations["refined_points_on_droplet"] = result.get("on_curve_error", 1.0) < ON_CURVE_TOL
    validations["points_cluster_at_waists"] = (
        report.get("refined_inverse_peak", 0.0) > report.get("input_inverse_peak", 1.0)
    )
    validations["trace_generated"] = bool(result.get("trace_id"))

    return validations
