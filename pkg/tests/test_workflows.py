"""
Integration tests for the reparametrization pipeline.
"""

import json

import numpy as np
import pytest

from src.config import build_pipeline_config
from src.errors import ArtifactFormatError
from src.state import read_curve, read_invariants, read_spacing, write_curve_samples
from src.validation import get_example
from src.workflows import ReparametrizationPipeline, create_pipeline, identity_error


def circle_config(tmp_path, monitor="phi0", **changes):
    data = {
        "curve": {"example": "circle"},
        "monitor": {"builtin": monitor},
        "n1": 64,
        "n2": 128,
        "n3": 128,
        "dt": 1 / 64,
        "outputs": {
            "invariants": str(tmp_path / "inv.json"),
            "spacing": str(tmp_path / "spacing.json"),
            "curve": str(tmp_path / "refined.csv"),
            "metrics": str(tmp_path / "metrics.json"),
        },
    }
    data.update(changes)
    return build_pipeline_config(data)


class TestPipeline:
    """Test the extract -> normalize -> evolve -> refine run."""

    def test_factory(self, tmp_path):
        """Test create_pipeline returns a configured pipeline."""
        config = circle_config(tmp_path)
        pipeline = create_pipeline(config)
        assert isinstance(pipeline, ReparametrizationPipeline)
        assert pipeline.config is config

    def test_run_summary(self, tmp_path):
        """Test the summary of a circle run with phi0."""
        result = create_pipeline(circle_config(tmp_path)).run(trace_id="run-42")
        summary = result.summary
        assert summary.trace_id == "run-42"
        assert summary.curve == "circle(radius=1)"
        assert summary.monitor == "phi0"
        assert (summary.n1, summary.n_up, summary.k_max) == (64, 128, 32)
        assert summary.L == pytest.approx(2 * np.pi, abs=1e-13)
        assert summary.l1_norm == pytest.approx(np.pi, abs=1e-14)
        assert summary.steps == 64
        assert summary.residual < 1e-6
        assert summary.max_drift < 1e-10

    def test_outputs_written(self, tmp_path):
        """Test every declared output exists and parses."""
        result = create_pipeline(circle_config(tmp_path)).run()
        outputs = result.summary.outputs
        assert set(outputs) == {"invariants", "spacing", "curve", "metrics"}
        assert read_invariants(outputs["invariants"]).k_max == 32
        assert read_spacing(outputs["spacing"]).n == 128
        refined = read_curve(outputs["curve"])
        assert refined.n == 128
        assert np.allclose(np.hypot(refined.x, refined.y), 1.0, atol=1e-12)
        metrics = json.loads(open(outputs["metrics"], encoding="utf-8").read())
        assert "equidistribution_residual" in metrics["diagnostics"]

    def test_unset_outputs_are_skipped(self, tmp_path):
        """Test a config without outputs writes nothing."""
        result = create_pipeline(circle_config(tmp_path, outputs={})).run()
        assert result.summary.outputs == {}
        assert list(tmp_path.iterdir()) == []

    def test_unit_monitor_is_identity(self, tmp_path):
        """Test a uniform monitor returns the arclength samples."""
        droplet = {"example": "droplet", "params": {"eps_p": 0.5}}
        config = circle_config(tmp_path, monitor="unit", curve=droplet, n1=128, n2=64, n3=64, dt=0.25, outputs={})
        result = create_pipeline(config).run()
        assert identity_error(result) < 1e-12

    def test_refined_points_cluster(self, tmp_path):
        """Test phi0 puts the densest points near s = 0 on the circle."""
        result = create_pipeline(circle_config(tmp_path, outputs={})).run()
        gaps = np.hypot(np.diff(result.refined.x), np.diff(result.refined.y))
        assert gaps[0] < gaps[len(gaps) // 2]

    def test_curve_file_input(self, tmp_path):
        """Test a curve file whose size differs from n1 is used as is."""
        path = write_curve_samples(get_example("circle").sample(32), str(tmp_path / "c.csv"))
        config = circle_config(tmp_path, curve={"path": path}, n1=64, outputs={})
        result = create_pipeline(config).run()
        assert result.summary.n1 == 32
        assert result.summary.curve == path

    def test_failure_is_raised(self, tmp_path):
        """Test an unknown monitor stops the run with its own error."""
        config = circle_config(tmp_path, monitor="phi9", outputs={})
        with pytest.raises(ArtifactFormatError, match="phi9"):
            create_pipeline(config).run()
