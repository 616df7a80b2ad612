"""
Scenario: periodized peakons refined at their crests

The graph of two rounded, periodized peakons is an open curve with
horizontal period 2 pi.  The monitor phi2 places one narrow and one
wide Gaussian on the two crests, so the refined mesh resolves both
corners with far fewer points than the uniform graph sampling.

Setup:
- Curve: peakons, eps_r = 0.05, N1 = 4096
- Monitor: phi2
- N2 = 1024, dt = 5e-4, N3 = 1024
- Outputs: invariants, spacing, refined curve, metrics
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from src.config.settings import build_pipeline_config
from src.validation import get_example, local_spacing_report
from src.workflows import create_pipeline

SCENARIO_NAME = "peakons"
SCENARIO_TITLE = "Periodized Peakons Refined at Their Crests"

EXAMPLE_PARAMS = {"eps_r": 0.05}
RESIDUAL_TOL = 1e-6
DRIFT_TOL = 1e-10
ON_CURVE_TOL = 1e-8


def get_scenario_config(output_dir: str) -> dict:
    """Pipeline config mapping for this scenario."""
    out = Path(output_dir)
    return {
        "curve": {"example": "peakons", "params": EXAMPLE_PARAMS},
        "monitor": {"builtin": "phi2"},
        "n1": 4096,
        "n2": 1024,
        "n3": 1024,
        "dt": 5e-4,
        "outputs": {
            "invariants": str(out / "peakons_invariants.json"),
            "spacing": str(out / "peakons_spacing.json"),
            "curve": str(out / "peakons_refined.csv"),
            "metrics": str(out / "peakons_metrics.json"),
        },
    }


def run_scenario(output_dir: str = "outputs") -> dict:
    """Run the pipeline and measure the refined graph against the exact one."""
    Path(output_dir).mkdir(parents=True, exist_ok=True)
    result = create_pipeline(build_pipeline_config(get_scenario_config(output_dir))).run()
    example = get_example("peakons", EXAMPLE_PARAMS)
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
    """Pass/fail checks for the peakons run."""
    validations = {}
    report = result.get("spacing_report", {})

    validations["residual_small"] = result.get("residual", 1.0) < RESIDUAL_TOL
    validations["spacing_positive"] = result.get("min_spacing", 0.0) > 0.0
    validations["mean_spacing_preserved"] = result.get("max_drift", 1.0) < DRIFT_TOL
    validations["refined_points_on_graph"] = result.get("on_curve_error", 1.0) < ON_CURVE_TOL
    validations["points_cluster_at_crests"] = (
        report.get("refined_inverse_peak", 0.0) > report.get("input_inverse_peak", 1.0)
    )
    validations["trace_generated"] = bool(result.get("trace_id"))

    return validations
