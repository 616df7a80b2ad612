"""
Unit tests for the equidistribution evolution.

The monitor phi0 normalizes to phi* = 1 + cos(s)/2, so the interpolated
curvature is kappa = 1 + (t/2) cos s and the equidistributed state at
time t is known in closed form: s + (t/2) sin s = alpha with
s_alpha = 1 / kappa(s, t).
"""

from unittest import mock

import numpy as np
import pytest

from src.errors import CurvaturePositivityError, MonotonicityLossError, ParameterError, SpacingPositivityError
from src.evolution import SpacingState, build_fields, equidistribution_residual, evolve, rhs
from src.monitor import PRESETS, MonitorSpec, normalize
from src.observability.metrics import MetricsCollector
from src.spectral import TWO_PI, UniformGrid
from src.validation import fitted_slope
from tests.curves import cosine_arclength_nodes, cosine_spacing

N2 = 128


def exact_spacing(t, n=N2, amplitude=0.5):
    return cosine_spacing(t, n, amplitude)


def exact_rate(t, n=N2):
    """d s_alpha / dt at fixed alpha."""
    s = cosine_arclength_nodes(t, n)
    kappa = 1.0 + 0.5 * t * np.cos(s)
    return -(0.5 * np.cos(s) + 0.25 * t * np.sin(s) ** 2 / kappa) / kappa**2


@pytest.fixture
def phi0():
    return normalize(PRESETS["phi0"], TWO_PI, N2)


class TestClosedForm:
    """Test the reference trajectory used by the evolution tests."""

    @pytest.mark.parametrize("t", [0.0, 0.5, 1.0])
    def test_nodes_solve_equidistribution(self, t):
        """Test s + (t/2) sin s = alpha at every node and unit mean spacing."""
        s = cosine_arclength_nodes(t, N2)
        alpha = UniformGrid(N2).nodes
        assert np.max(np.abs(s + 0.5 * t * np.sin(s) - alpha)) < 5e-14
        assert np.mean(exact_spacing(t)) == pytest.approx(1.0, abs=1e-14)

    def test_exact_state_is_equidistributed(self, phi0):
        """Test the closed-form terminal state has a roundoff-level residual."""
        assert equidistribution_residual(SpacingState(1.0, exact_spacing(1.0)), phi0) < 1e-12


class TestFields:
    """Test the known data of the interpolated curve."""

    def test_curvature_interpolation(self, phi0):
        """Test kappa(s, t) = 1 + (t/2) cos s and kappa_t = cos(s)/2."""
        fields = build_fields(phi0, 0.4, N2)
        s = UniformGrid(N2).nodes
        assert np.allclose(fields.kappa.evaluate(s).real, 1.0 + 0.2 * np.cos(s), atol=1e-14)
        assert fields.kappa_t.coeff(1) == pytest.approx(0.25, abs=1e-15)

    def test_unit_tangent(self, phi0):
        """Test (x_s, y_s) is a unit vector."""
        fields = build_fields(phi0, 0.7, N2)
        assert np.allclose(np.hypot(fields.x_s, fields.y_s), 1.0, atol=1e-14)

    def test_velocity_vanishes_at_start_of_closed_curve(self, phi0):
        """Test the curve point at s = 0 is fixed in time."""
        fields = build_fields(phi0, 0.3, N2)
        assert abs(fields.x_t.evaluate(np.array([0.0]))[0]) < 1e-13
        assert abs(fields.y_t.evaluate(np.array([0.0]))[0]) < 1e-13

    def test_curvature_positivity(self, phi0):
        """Test extrapolating past t = 2 loses positive curvature."""
        with pytest.raises(CurvaturePositivityError, match="t=3"):
            build_fields(phi0, 3.0, N2)


class TestRightHandSide:
    """Test the spacing rate against the closed-form trajectory."""

    @pytest.mark.parametrize("evaluator", ["nufft", "direct"])
    def test_rate_matches_exact(self, phi0, evaluator):
        """Test d s_alpha / dt at t = 0.5 on the exact state."""
        t = 0.5
        state = SpacingState(t, exact_spacing(t))
        rate = rhs(state, build_fields(phi0, t, N2), evaluator=evaluator)
        assert np.max(np.abs(rate - exact_rate(t))) < 1e-11

    def test_rate_at_start(self, phi0):
        """Test the rate from the unit circle is -cos(alpha)/2."""
        rate = rhs(SpacingState.uniform(N2), build_fields(phi0, 0.0, N2))
        assert np.allclose(rate, -0.5 * np.cos(UniformGrid(N2).nodes), atol=1e-12)

    def test_rate_preserves_mean(self, phi0):
        """Test the rate has zero mean, so the total length stays 2 pi."""
        t = 0.8
        rate = rhs(SpacingState(t, exact_spacing(t)), build_fields(phi0, t, N2))
        assert abs(np.mean(rate)) < 1e-12

    def test_nonmonotone_state_rejected(self, phi0):
        """Test a nonpositive spacing cannot be mapped to arclength nodes."""
        bad = np.ones(N2)
        bad[5] = -0.5
        with pytest.raises(MonotonicityLossError):
            rhs(SpacingState(0.0, bad), build_fields(phi0, 0.0, N2))


class TestEvolve:
    """Test the RK4 integration to t = 1."""

    def test_terminal_spacing(self, phi0):
        """Test the terminal spacing against the exact equidistribution."""
        result = evolve(phi0, N2, 1.0 / 512)
        assert result.steps == 512
        assert result.state.t == 1.0
        assert np.max(np.abs(result.state.s_alpha - exact_spacing(1.0))) < 1e-10
        assert result.residual < 1e-10
        assert result.max_drift < 1e-10
        assert result.monitor_name == "phi0"

    def test_fourth_order_convergence(self, phi0):
        """Test the terminal error falls like dt^4."""
        exact = exact_spacing(1.0)
        dts = [1 / 16, 1 / 32, 1 / 64, 1 / 128]
        errors = [np.max(np.abs(evolve(phi0, N2, dt).state.s_alpha - exact)) for dt in dts]
        assert 3.7 <= fitted_slope(dts, errors) <= 4.3

    def test_last_step_is_shortened(self, phi0):
        """Test a step size that does not divide 1 still ends at t = 1."""
        result = evolve(phi0, N2, 0.15)
        assert result.steps == 7
        assert result.state.t == 1.0

    def test_unit_monitor_is_stationary(self):
        """Test the unit monitor keeps the uniform spacing."""
        unit = normalize(PRESETS["unit"], TWO_PI, 32)
        result = evolve(unit, 32, 0.25)
        assert np.allclose(result.state.s_alpha, 1.0, atol=1e-14)
        assert result.residual < 1e-14

    def test_warm_start_matches_cold_start(self, phi0):
        """Test continuing from an equidistributed intermediate monitor."""
        half = normalize(MonitorSpec(constant=1.0, cosines=[{"amplitude": 0.25, "wavenumber": 1}]), TWO_PI, N2)
        initial = SpacingState(0.0, exact_spacing(1.0, amplitude=0.25))
        warm = evolve(phi0, N2, 1.0 / 256, kappa0=half, initial=initial)
        cold = evolve(phi0, N2, 1.0 / 256)
        assert np.max(np.abs(warm.state.s_alpha - cold.state.s_alpha)) < 1e-9
        assert np.max(np.abs(warm.state.s_alpha - exact_spacing(1.0))) < 1e-9

    def test_metrics_recorded(self, phi0):
        """Test the residual and drift diagnostics are recorded."""
        evolve(phi0, N2, 0.125)
        diagnostics = MetricsCollector().get_summary()["diagnostics"]
        assert {"equidistribution_residual", "mean_drift"} <= set(diagnostics)

    def test_residual_of_initial_state(self, phi0):
        """Test the uniform spacing is not equidistributed for phi0."""
        assert equidistribution_residual(SpacingState.uniform(N2), phi0) == pytest.approx(0.5, abs=1e-12)


class TestEvolveErrors:
    """Test argument checks and failure reporting."""

    @pytest.mark.parametrize("dt", [0.0, -0.1, 0.3])
    def test_bad_step(self, phi0, dt):
        """Test dt must lie in (0, 0.25]."""
        with pytest.raises(ParameterError, match="dt"):
            evolve(phi0, N2, dt)

    def test_half_warm_start(self, phi0):
        """Test kappa0 without an initial spacing is rejected."""
        with pytest.raises(ParameterError, match="warm start"):
            evolve(phi0, N2, 0.1, kappa0=phi0)

    def test_initial_size_mismatch(self, phi0):
        """Test the initial spacing must live on the n2 grid."""
        with pytest.raises(ParameterError, match="nodes"):
            evolve(phi0, N2, 0.1, kappa0=phi0, initial=SpacingState.uniform(32))

    def test_nonpositive_spacing(self, phi0):
        """Test a step producing negative spacing reports the time."""
        with mock.patch("src.evolution.stepper.runge_kutta4", return_value=-np.ones(N2)):
            with pytest.raises(SpacingPositivityError) as info:
                evolve(phi0, N2, 0.25)
        assert info.value.t == 0.25
        assert info.value.exit_code == 3

    def test_non_finite_spacing(self, phi0):
        """Test NaN spacing is reported as a positivity failure."""
        with mock.patch("src.evolution.stepper.runge_kutta4", return_value=np.full(N2, np.nan)):
            with pytest.raises(SpacingPositivityError, match="finite"):
                evolve(phi0, N2, 0.25)

    def test_monotonicity_loss_is_wrapped(self, phi0):
        """Test a lost arclength map inside a step becomes a positivity failure."""
        with mock.patch("src.evolution.stepper.runge_kutta4", side_effect=MonotonicityLossError("folded")):
            with pytest.raises(SpacingPositivityError, match="folded"):
                evolve(phi0, N2, 0.25)
