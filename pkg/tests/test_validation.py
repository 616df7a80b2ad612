"""
Unit tests for example curves, error metrics and convergence studies.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import ArtifactFormatError, ParameterError
from src.evolution import evolve
from src.geometry import CurveKind, PlanarCurveSamples, compute_geometry
from src.invariants import extract
from src.monitor import PRESETS, normalize
from src.observability.metrics import MetricsCollector
from src.spectral import TWO_PI, UniformGrid
from src.validation import (
    CircleExample,
    DropletExample,
    ErrorRow,
    ErrorTable,
    PeakonsExample,
    StudyParams,
    compare_invariants,
    fitted_slope,
    get_example,
    make_example,
    run_study,
    spacing_tail_ratio,
)
from tests.curves import ellipse


class TestExamples:
    """Test the analytic example curves."""

    def test_registry(self):
        """Test examples resolve by name and reject unknown ones."""
        assert isinstance(get_example("circle"), CircleExample)
        with pytest.raises(ParameterError, match="unknown example"):
            get_example("trefoil")

    def test_droplet_defaults(self):
        """Test the droplet defaults to eps_p = 2/7."""
        assert get_example("droplet").eps_p == pytest.approx(2.0 / 7.0)

    @pytest.mark.parametrize("eps_p", [-0.1, 2.0, 2.5])
    def test_droplet_range(self, eps_p):
        """Test eps_p must lie in [0, 2)."""
        with pytest.raises(ParameterError, match="eps_p"):
            DropletExample({"eps_p": eps_p})

    def test_droplet_zero_is_unit_circle(self):
        """Test eps_p = 0 gives the unit circle."""
        curve = make_example("droplet", {"eps_p": 0.0}, 32)
        assert np.allclose(np.hypot(curve.x, curve.y), 1.0, atol=1e-15)

    def test_droplet_waists(self):
        """Test the waists sit at u = 0 and u = pi."""
        drop = DropletExample({"eps_p": 1.3})
        u = UniformGrid(1024).nodes
        r = np.hypot(*drop.point(u))
        waists = u[np.argsort(r)[:2]]
        assert sorted(waists) == pytest.approx([0.0, np.pi], abs=1e-12)

    def test_droplet_curvature_peak(self):
        """Test |kappa| reaches about 220 for eps_p = 1.7."""
        assert DropletExample({"eps_p": 1.7}).kappa_max() == pytest.approx(220.0, abs=5.0)

    def test_peakons_curvature_peak(self):
        """Test |kappa| reaches about 144 for eps_r = 1e-2."""
        assert PeakonsExample({"eps_r": 1e-2}).kappa_max() == pytest.approx(144.0, abs=5.0)

    def test_peakons_range(self):
        """Test eps_r must be positive."""
        with pytest.raises(ParameterError):
            PeakonsExample({"eps_r": 0.0})

    def test_analytic_curvature_matches_spectral(self):
        """Test the closed-form droplet curvature against spectral geometry."""
        drop = DropletExample({"eps_p": 0.5})
        geo = compute_geometry(drop.sample(256))
        assert np.allclose(geo.kappa, drop.curvature(UniformGrid(256).nodes), atol=1e-11)

    def test_peakons_kind(self):
        """Test the peakons are a periodic graph."""
        curve = make_example("peakons", {"eps_r": 0.5}, 64)
        assert curve.kind is CurveKind.hperiodic
        assert curve.x[1] - curve.x[0] == pytest.approx(TWO_PI / 64)

    def test_parameter_of(self):
        """Test points on the droplet map back to their parameter."""
        drop = DropletExample({"eps_p": 1.0})
        u = np.linspace(0.1, 6.0, 13)
        assert np.allclose(drop.parameter_of(*drop.point(u)), u, atol=1e-13)
        assert drop.analytic_error(*drop.point(u)) < 1e-14

    def test_describe(self):
        """Test the example description lists its parameters."""
        assert DropletExample({"eps_p": 1.3}).describe() == "droplet(eps_p=1.3)"


class TestCompare:
    """Test invariant comparison and spacing diagnostics."""

    def test_self_comparison(self):
        """Test comparing an invariant set with itself gives zero."""
        inv = extract(PlanarCurveSamples.from_function(ellipse(), 128))
        comparison = compare_invariants(inv, inv)
        assert comparison.l2_rel == 0.0
        assert comparison.linf_rel == 0.0
        assert comparison.dense_n == 4 * inv.k_max
        assert not comparison.length_mismatch

    def test_band_padding(self):
        """Test a coarser band is padded against a finer reference."""
        fine = extract(PlanarCurveSamples.from_function(ellipse(), 256))
        coarse = extract(PlanarCurveSamples.from_function(ellipse(), 128))
        comparison = compare_invariants(fine, coarse, dense_n=300)
        assert comparison.l2_rel < 1e-12
        assert comparison.linf_rel < 1e-12
        assert comparison.dense_n == 300

    def test_length_mismatch(self):
        """Test a different curve length is flagged and recorded."""
        ref = extract(PlanarCurveSamples.from_function(ellipse(), 128))
        other = extract(PlanarCurveSamples.from_function(ellipse(2.2, 1.1), 128))
        comparison = compare_invariants(ref, other)
        assert comparison.length_mismatch
        assert comparison.length_rel == pytest.approx(0.1, rel=1e-12)
        assert MetricsCollector().warning_kinds("validation") == ["length_mismatch"]

    def test_tail_ratio(self):
        """Test the spacing tail ratio picks up high modes."""
        alpha = UniformGrid(16).nodes
        assert spacing_tail_ratio(np.full(16, 2.0)) == pytest.approx(0.0, abs=1e-15)
        assert spacing_tail_ratio(2.0 + 0.2 * np.cos(6 * alpha)) == pytest.approx(0.05, abs=1e-15)

    def test_fitted_slope(self):
        """Test the log-log slope of a power law."""
        x = [1.0, 2.0, 4.0, 8.0]
        assert fitted_slope(x, [v**-2 for v in x]) == pytest.approx(-2.0, abs=1e-12)


class TestErrorTable:
    """Test error tables."""

    def test_csv_preserves_rows(self, tmp_path):
        """Test rows and metadata survive a CSV file."""
        table = ErrorTable(kind="refinement", example="peakons(eps_r=0.01)", rows=[
            ErrorRow(n=256, n1=256, n3=256, err_arc_linf=1e-4, err_ref_l2=3e-7),
            ErrorRow(n=512, n1=512, n3=512, err_arc_linf=2e-6, err_ref_l2=1e-11),
        ])
        loaded = ErrorTable.from_csv(table.to_csv(str(tmp_path / "t.csv")))
        assert loaded.kind == "refinement"
        assert loaded.example == "peakons(eps_r=0.01)"
        assert loaded.column("err_ref_l2") == [3e-7, 1e-11]
        assert loaded.rows[0].dt is None

    def test_sorted(self):
        """Test rows sort by N, then by decreasing dt."""
        table = ErrorTable(kind="rk4_convergence", example="droplet", rows=[
            ErrorRow(n=64, dt=0.01), ErrorRow(n=32, dt=0.01), ErrorRow(n=64, dt=0.1),
        ]).sorted()
        assert [(r.n, r.dt) for r in table.rows] == [(32, 0.01), (64, 0.1), (64, 0.01)]

    def test_missing_file(self, tmp_path):
        """Test a missing table is an artifact error."""
        with pytest.raises(ArtifactFormatError):
            ErrorTable.from_csv(str(tmp_path / "none.csv"))


class TestStudies:
    """Test the study runners at small sizes."""

    def test_unknown_kind(self):
        """Test an unknown study kind is a parameter error."""
        with pytest.raises(ParameterError):
            run_study("spectral_leakage", StudyParams())

    def test_odd_sweep_rejected(self):
        """Test sweep sizes must be even."""
        with pytest.raises(ValidationError):
            StudyParams(sweep=[32, 33])

    def test_rk4_needs_dts(self):
        """Test the RK4 study needs a step sweep."""
        with pytest.raises(ParameterError, match="dt sweep"):
            run_study("rk4_convergence", StudyParams(monitor="phi0", n2=32))

    def test_rk4_residual_decreases(self):
        """Test the residual falls with the step size."""
        params = StudyParams(monitor="phi0", n2=128, dts=[1 / 32, 1 / 8, 1 / 16])
        table = run_study("rk4_convergence", params)
        assert table.column("dt") == [1 / 8, 1 / 16, 1 / 32]
        residuals = table.column("residual")
        assert residuals[0] > residuals[1] > residuals[2]
        assert fitted_slope(table.column("dt"), residuals) > 3.0

    def test_refinement_study(self, tmp_path):
        """Test refined rows and the cached reference."""
        params = StudyParams(
            example="droplet",
            example_params={"eps_p": 2.0 / 7.0},
            sweep=[128, 64],
            monitor="phi0",
            n2=64,
            dt=1 / 32,
            ref_n1=256,
            cache_dir=str(tmp_path),
        )
        table = run_study("refinement", params)
        assert table.column("n") == [64, 128]
        assert table.column("n3") == [64, 128]
        assert all(v is not None for v in table.column("err_ref_l2"))
        assert table.rows[-1].err_ref_l2 < 1e-10
        assert table.rows[-1].err_arc_linf < 1e-10
        assert len(list(tmp_path.glob("droplet_*_n1256_nup512_k128.json"))) == 1
        again = run_study("refinement", params)
        assert again.column("err_ref_l2") == pytest.approx(table.column("err_ref_l2"), rel=1e-12)


@pytest.mark.slow
class TestFullScale:
    """Long-running reproductions at production sizes."""

    def test_droplet_refinement_dominance(self):
        """Test refined L2 errors beat arclength errors at equal N above the floor."""
        params = StudyParams(
            example="droplet",
            example_params={"eps_p": 1.3},
            sweep=[256, 512, 1024],
            monitor="phi1",
            n2=512,
            dt=2.5e-4,
            ref_n1=8192,
            ref_n_up=16384,
            ref_k_max=4096,
        )
        table = run_study("refinement", params)
        for row in table.rows:
            if row.err_arc_linf > 1e-10:
                assert row.err_ref_l2 < row.err_arc_linf
        assert table.rows[-1].err_ref_l2 < 1e-10

    def test_peakons_refinement_dominance(self):
        """Test refined L2 errors beat arclength errors on the peakons graph."""
        params = StudyParams(
            example="peakons",
            example_params={"eps_r": 0.05},
            sweep=[256, 512, 1024],
            monitor="phi2",
            n2=1024,
            dt=5e-4,
            ref_n1=8192,
            ref_n_up=65536,
            ref_k_max=4096,
        )
        table = run_study("refinement", params)
        above_floor = [row for row in table.rows if row.err_arc_linf > 1e-10]
        assert above_floor
        for row in above_floor:
            assert row.err_ref_l2 < row.err_arc_linf
        assert table.rows[-1].err_ref_l2 < table.rows[0].err_ref_l2

    @pytest.mark.parametrize("monitor, dt, tol", [("phi1", 1e-4, 5e-12), ("phi2", 5e-5, 2e-12)])
    def test_preset_residual_at_full_size(self, monitor, dt, tol):
        """Test the presets equidistribute on 2048 nodes."""
        phi = normalize(PRESETS[monitor], TWO_PI, 2048)
        result = evolve(phi, 2048, dt)
        assert result.residual <= tol
        assert result.max_drift < 1e-10
        assert result.state.s_alpha.min() > 0.0

    def test_droplet17_step_one(self):
        """Test the pinched droplet at N1 = 32768 reaches about 1e-11."""
        params = StudyParams(example="droplet", example_params={"eps_p": 1.7}, sweep=[32768])
        table = run_study("step1_convergence", params)
        assert table.rows[0].err_arc_linf < 1e-10
