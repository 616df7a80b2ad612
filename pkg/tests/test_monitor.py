"""
Unit tests for monitor specifications and normalization.
"""

import json
import math

import numpy as np
import pytest
from scipy.integrate import quad

from src.errors import ArtifactFormatError, InvalidMonitorError, MonitorPositivityError
from src.monitor import (
    PRESETS,
    MonitorSpec,
    build_monitor_spec,
    eval_monitor,
    load_monitor,
    monitor_from_samples,
    normalize,
)
from src.spectral import TWO_PI, UniformGrid


def quad_norm(spec):
    value, _ = quad(lambda s: eval_monitor(spec, np.array([s]))[0], 0.0, TWO_PI,
                    epsabs=1e-13, epsrel=1e-13, limit=400, points=[math.pi, math.pi + 0.692, 0.4])
    return value


class TestSpecs:
    """Test spec validation and loading."""

    def test_presets_exist(self):
        """Test the builtin monitors are registered."""
        assert set(PRESETS) >= {"unit", "phi0", "phi1", "phi2"}

    def test_phi0_values(self):
        """Test phi0(0) = 0.75 and phi0(pi) = 0.25."""
        values = eval_monitor(PRESETS["phi0"], np.array([0.0, np.pi]))
        assert values == pytest.approx([0.75, 0.25], abs=1e-15)

    def test_gaussian_is_periodized(self):
        """Test values agree one period apart."""
        s = np.array([0.1, 1.0, 3.0])
        spec = PRESETS["phi2"]
        assert np.allclose(eval_monitor(spec, s), eval_monitor(spec, s + TWO_PI), atol=1e-14)

    def test_negative_amplitude_rejected(self):
        """Test a nonpositive Gaussian amplitude is a config error."""
        with pytest.raises(InvalidMonitorError, match="amplitude"):
            build_monitor_spec({"gaussians": [{"amplitude": -1.0, "center": 0.0, "width": 2.0}]})

    def test_nonpositive_cosine_monitor_rejected(self):
        """Test constant minus cosine amplitudes must stay positive."""
        with pytest.raises(InvalidMonitorError):
            build_monitor_spec({"constant": 0.2, "cosines": [{"amplitude": 0.5, "wavenumber": 1}]})

    def test_load_builtin(self):
        """Test a preset name resolves to the preset."""
        assert load_monitor("phi1") is PRESETS["phi1"]

    def test_load_spec_file(self, tmp_path):
        """Test a JSON spec file is read and named after the file."""
        path = tmp_path / "bump.json"
        path.write_text(json.dumps({"constant": 1.0, "gaussians": [{"amplitude": 3.0, "center": 1.0, "width": 2.0}]}))
        spec = load_monitor(str(path))
        assert isinstance(spec, MonitorSpec)
        assert spec.name == "bump"

    def test_load_samples_file(self, tmp_path):
        """Test a samples document is read."""
        path = tmp_path / "sampled.json"
        path.write_text(json.dumps({"samples": [1.0, 2.0, 1.0, 2.0]}))
        assert load_monitor(str(path)).samples == [1.0, 2.0, 1.0, 2.0]

    def test_load_unknown(self):
        """Test an unknown name that is no file is an artifact error."""
        with pytest.raises(ArtifactFormatError):
            load_monitor("no_such_monitor")

    def test_load_invalid_json(self, tmp_path):
        """Test malformed JSON is an artifact error."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ArtifactFormatError):
            load_monitor(str(path))


class TestNormalization:
    """Test L1-type normalization."""

    def test_phi0_norm_is_pi(self):
        """Test ||phi0|| = pi and phi* = 1 + cos(s)/2."""
        phi = normalize(PRESETS["phi0"], TWO_PI, 64)
        assert phi.l1_norm == pytest.approx(np.pi, abs=1e-14)
        nodes = UniformGrid(64).nodes
        assert np.allclose(phi.samples(), 1.0 + 0.5 * np.cos(nodes), atol=1e-14)

    def test_phi1_norm(self):
        """Test ||phi1|| = 2 pi + 74 sqrt(pi) / 7.5, about 23.8."""
        phi = normalize(PRESETS["phi1"], TWO_PI, 256)
        assert phi.l1_norm == pytest.approx(TWO_PI + 74.0 * math.sqrt(math.pi) / 7.5, rel=1e-13)
        assert phi.l1_norm == pytest.approx(quad_norm(PRESETS["phi1"]), rel=1e-11)
        assert phi.l1_norm == pytest.approx(23.77, abs=0.01)

    def test_phi2_norm(self):
        """Test ||phi2|| is about 21."""
        phi = normalize(PRESETS["phi2"], TWO_PI, 256)
        assert phi.l1_norm == pytest.approx(quad_norm(PRESETS["phi2"]), rel=1e-11)
        assert phi.l1_norm == pytest.approx(21.0, abs=0.5)

    @pytest.mark.parametrize("name", ["phi0", "phi1", "phi2", "unit"])
    def test_unit_mean(self, name):
        """Test the normalized monitor has mean exactly one."""
        phi = normalize(PRESETS[name], 5.0, 256)
        assert phi.mean == 1.0
        assert phi.samples().min() > 0.0

    @pytest.mark.parametrize("scale", [1e-3, 3.7, 250.0])
    def test_scale_invariance(self, scale):
        """Test normalize(c phi) = normalize(phi) for c > 0."""
        data = PRESETS["phi1"].model_dump()
        data["constant"] *= scale
        for term in data["gaussians"] + data["cosines"]:
            term["amplitude"] *= scale
        base = normalize(PRESETS["phi1"], TWO_PI, 256)
        scaled = normalize(build_monitor_spec(data), TWO_PI, 256)
        assert scaled.l1_norm == pytest.approx(scale * base.l1_norm, rel=1e-14)
        assert np.max(np.abs(scaled.samples() - base.samples())) <= 1e-14 * base.samples().max()

    def test_scale_invariance_of_samples(self):
        """Test sampled monitors normalize independently of their scale."""
        nodes = UniformGrid(32).nodes
        values = 2.0 + np.cos(nodes) + 0.3 * np.sin(3 * nodes)
        base = monitor_from_samples(values)
        scaled = monitor_from_samples(40.0 * values)
        assert np.max(np.abs(scaled.samples() - base.samples())) < 1e-14

    def test_unit_monitor(self):
        """Test the unit monitor normalizes to phi* = 1."""
        phi = normalize(PRESETS["unit"], 3.0, 16)
        assert np.allclose(phi.samples(), 1.0)
        assert phi.max_over_mean == pytest.approx(1.0)

    def test_arclength_variable(self):
        """Test an arclength monitor on a curve of length L = 4 pi."""
        spec = MonitorSpec(constant=1.0, cosines=[{"amplitude": 0.5, "wavenumber": 1}], variable="arclength")
        phi = normalize(spec, 4 * np.pi, 32)
        nodes = UniformGrid(32).nodes
        assert np.allclose(phi.samples(), 1.0 + 0.5 * np.cos(nodes), atol=1e-14)

    def test_derivative_and_evaluate(self):
        """Test the derivative series and off-grid evaluation of phi0*."""
        phi = normalize(PRESETS["phi0"], TWO_PI, 16)
        s = np.array([0.3, 2.0])
        assert np.allclose(phi.evaluate(s), 1.0 + 0.5 * np.cos(s), atol=1e-14)
        assert phi.derivative().coeff(1) == pytest.approx(0.25j, abs=1e-15)

    def test_from_samples_resizes(self):
        """Test sampled monitors are Fourier-resized to the requested grid."""
        nodes = UniformGrid(16).nodes
        phi = monitor_from_samples(2.0 + np.cos(nodes), n=64)
        assert phi.n == 64
        assert np.allclose(phi.samples(), 1.0 + 0.5 * np.cos(UniformGrid(64).nodes), atol=1e-14)

    def test_nonpositive_samples(self):
        """Test a sampled monitor must be positive."""
        with pytest.raises(MonitorPositivityError):
            monitor_from_samples(np.array([1.0, -0.5, 1.0, 2.0]))

    def test_sampled_monitor_via_normalize(self, tmp_path):
        """Test normalize() accepts a loaded samples document."""
        path = tmp_path / "s.json"
        nodes = UniformGrid(8).nodes
        path.write_text(json.dumps({"samples": list(3.0 + np.sin(nodes))}))
        phi = normalize(load_monitor(str(path)), 1.0, 8)
        assert phi.l1_norm == pytest.approx(6 * np.pi)
