"""
Unit tests for artifact documents and curve files.
"""

import json

import numpy as np
import pytest

from src.errors import ArtifactFormatError, DegenerateCurveError
from src.evolution import SpacingState
from src.geometry import CurveKind, PlanarCurveSamples
from src.invariants import extract
from src.state import (
    InvariantsDocument,
    SpacingDocument,
    read_curve,
    read_invariants,
    read_spacing,
    write_curve,
    write_curve_samples,
    write_invariants,
    write_spacing,
)
from src.validation import make_example
from tests.curves import ellipse


class TestInvariantFiles:
    """Test invariants documents."""

    def test_write_and_read(self, tmp_path):
        """Test every field of the invariants survives the file."""
        inv = extract(make_example("peakons", {"eps_r": 0.5}, 128))
        loaded = read_invariants(write_invariants(inv, str(tmp_path / "inv.json")))
        assert loaded.L == inv.L
        assert loaded.kind is CurveKind.hperiodic
        assert loaded.slope_x == inv.slope_x
        assert loaded.base_point == inv.base_point
        assert np.array_equal(loaded.cx.coeffs, inv.cx.coeffs)
        assert loaded.provenance == {"n1": 128, "n_up": 2048}

    def test_band_mismatch(self, tmp_path):
        """Test a coefficient list that disagrees with k_max is rejected."""
        inv = extract(PlanarCurveSamples.from_function(ellipse(), 64))
        data = json.loads(InvariantsDocument.from_invariants(inv).model_dump_json())
        data["k_max"] = 8
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ArtifactFormatError, match="2\\*k_max"):
            read_invariants(str(path))

    def test_bad_pairs(self, tmp_path):
        """Test coefficients must be [re, im] pairs."""
        inv = extract(PlanarCurveSamples.from_function(ellipse(), 64))
        data = json.loads(InvariantsDocument.from_invariants(inv).model_dump_json())
        data["cy"][0] = [1.0]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ArtifactFormatError, match="cy"):
            read_invariants(str(path))

    def test_missing(self, tmp_path):
        """Test a missing invariants file."""
        with pytest.raises(ArtifactFormatError, match="not found"):
            read_invariants(str(tmp_path / "none.json"))


class TestSpacingFiles:
    """Test spacing documents."""

    def test_write_and_read(self, tmp_path):
        """Test the spacing, its time and the monitor name are stored."""
        state = SpacingState(1.0, 1.0 + 0.1 * np.cos(np.arange(8) * np.pi / 4))
        path = write_spacing(state, str(tmp_path / "s.json"), "phi0", 1e-13)
        document = json.loads(open(path, encoding="utf-8").read())
        assert document["N2"] == 8
        assert document["monitor"] == "phi0"
        assert document["residual"] == 1e-13
        loaded = read_spacing(path)
        assert loaded.t == 1.0
        assert np.array_equal(loaded.s_alpha, state.s_alpha)

    @pytest.mark.parametrize("changes,match", [
        ({"N2": 6}, "expected N2"),
        ({"N2": 3, "s_alpha": [1.0, 1.0, 1.0]}, "even"),
        ({"s_alpha": [1.0, 1.0, 0.0, 1.0]}, "positive"),
        ({"t": 1.5}, "t"),
    ])
    def test_invalid(self, tmp_path, changes, match):
        """Test inconsistent spacing documents are rejected."""
        data = {"N2": 4, "t": 1.0, "s_alpha": [1.0, 1.1, 0.9, 1.0], **changes}
        path = tmp_path / "s.json"
        path.write_text(json.dumps(data))
        with pytest.raises(ArtifactFormatError, match=match):
            read_spacing(str(path))

    def test_document_from_state(self):
        """Test the document mirrors the state."""
        document = SpacingDocument.from_state(SpacingState.uniform(4))
        assert document.t == 0.0 and document.s_alpha == [1.0] * 4


class TestCurveFiles:
    """Test delimited curve files."""

    def test_write_and_read(self, tmp_path):
        """Test samples and kind survive the file to full precision."""
        curve = make_example("peakons", {"eps_r": 0.5}, 16)
        loaded = read_curve(write_curve_samples(curve, str(tmp_path / "c.csv")))
        assert loaded.kind is CurveKind.hperiodic
        assert np.array_equal(loaded.x, curve.x)
        assert np.array_equal(loaded.y, curve.y)

    def test_header(self, tmp_path):
        """Test the header lines."""
        path = write_curve(np.ones(4), np.zeros(4), "closed", str(tmp_path / "c.csv"))
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[:2] == ["# kind=closed", "# alpha,x,y"]

    def test_missing_kind_defaults_to_closed(self, tmp_path):
        """Test a file without a kind line is a closed curve."""
        alpha = np.arange(8) * np.pi / 4
        path = tmp_path / "c.csv"
        np.savetxt(path, np.column_stack([alpha, np.cos(alpha), np.sin(alpha)]), delimiter=",")
        assert read_curve(str(path)).kind is CurveKind.closed

    @pytest.mark.parametrize("body,match", [
        ("0,1,0\n1,0,1\n", "even and >= 4"),
        ("0,1\n1,2\n2,3\n3,4\n", "3 columns"),
        ("0,1,0\n0.5,0,1\n1,-1,0\n1.5,0,-1\n", "uniform grid"),
        ("0,1,x\n", "cannot parse"),
    ])
    def test_malformed(self, tmp_path, body, match):
        """Test malformed curve files are artifact errors."""
        path = tmp_path / "c.csv"
        path.write_text("# kind=closed\n" + body)
        with pytest.raises(ArtifactFormatError, match=match):
            read_curve(str(path))

    def test_unknown_kind(self, tmp_path):
        """Test an unknown kind header."""
        path = tmp_path / "c.csv"
        path.write_text("# kind=spiral\n0,1,0\n")
        with pytest.raises(ArtifactFormatError, match="kind"):
            read_curve(str(path))

    def test_non_finite_samples(self, tmp_path):
        """Test NaN coordinates make a degenerate curve."""
        alpha = np.arange(4) * np.pi / 2
        path = tmp_path / "c.csv"
        np.savetxt(path, np.column_stack([alpha, [1.0, np.nan, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]]), delimiter=",")
        with pytest.raises(DegenerateCurveError):
            read_curve(str(path))
