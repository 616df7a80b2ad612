"""
Evolve the local spacing to the equidistributing one.

The spacing s_alpha of the interpolated curve obeys

    s_alpha,t = V_alpha - s_alpha kappa U

with the tangential velocity of the monitor phi = kappa given
algebraically by V = -U_s / kappa and
V_alpha = -s_alpha (kappa_s / kappa) V - (s_alpha / kappa) U_ss.
Known data are evaluated at the moving nodes s(alpha_j) by Type-2 NUFFTs
and the system is integrated from the unit circle (t = 0) to t = 1 with
the classical fourth-order Runge-Kutta method.

Usage:
    from src.evolution import evolve
    from src.monitor import PRESETS, normalize

    phi = normalize(PRESETS["phi0"], L=2 * np.pi, n=128)
    result = evolve(phi, n2=128, dt=1e-3)
    print(result.residual)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Literal, Optional

import numpy as np

from src.errors import MonotonicityLossError, ParameterError, SpacingPositivityError
from src.evolution.fields import EvolutionFields, build_fields
from src.monitor import NormalizedMonitor
from src.nufft import nufft_type2_many
from src.observability.logger import get_logger, log_stage_event
from src.observability.metrics import MetricsCollector
from src.observability.timing import timed_operation
from src.spectral.calculus import antiderivative, forward_coeffs
from src.spectral.series import TWO_PI, _frozen

logger = get_logger("evolution")

DRIFT_WARN_TOL = 1e-8

Evaluator = Literal["nufft", "direct"]


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpacingState:
    """Local spacing on the alpha-grid at interpolation time t (length 2 pi)."""

    t: float
    s_alpha: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "s_alpha", _frozen(np.asarray(self.s_alpha, dtype=float)))

    @classmethod
    def uniform(cls, n2: int) -> "SpacingState":
        return cls(0.0, np.ones(n2))

    @property
    def n(self) -> int:
        return int(self.s_alpha.size)

    @property
    def s_of_alpha(self) -> np.ndarray:
        return antiderivative(forward_coeffs(self.s_alpha)).samples(self.n)

    @property
    def mean_drift(self) -> float:
        return abs(float(np.mean(self.s_alpha)) - 1.0)


@dataclass
class EvolutionResult:
    """Terminal spacing plus run diagnostics."""

    state: SpacingState
    steps: int
    residual: float
    max_drift: float
    monitor_name: str = "custom"
    warnings: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Right-hand side
# ---------------------------------------------------------------------------

def _arclength_nodes(s_alpha: np.ndarray) -> np.ndarray:
    s = antiderivative(forward_coeffs(s_alpha)).samples(s_alpha.size)
    if s_alpha.min() <= 0.0 or np.any(np.diff(s) <= 0.0) or s[-1] >= TWO_PI:
        raise MonotonicityLossError(
            f"arclength map not monotone in [0, 2pi): min s_alpha = {s_alpha.min():.3e}, "
            f"s(last node) = {s[-1]:.6g}"
        )
    return s


def rhs(
    state: SpacingState,
    fields: EvolutionFields,
    eps_rel: Optional[float] = None,
    evaluator: Evaluator = "nufft",
) -> np.ndarray:
    """d s_alpha / dt at the state's nodes.

    ``evaluator="direct"`` sums the series directly instead of using the
    Type-2 NUFFT.
    """
    s_alpha = np.asarray(state.s_alpha)
    s = _arclength_nodes(s_alpha)
    series = [
        fields.kappa,
        fields.kappa_s,
        fields.U.periodic,
        fields.U.slope,
        fields.U_s.periodic,
        fields.U_s.slope,
        fields.U_ss.periodic,
        fields.U_ss.slope,
    ]
    if evaluator == "direct":
        values = np.stack([c.evaluate(s) for c in series]).real
    else:
        values = nufft_type2_many(s, series, eps_rel=eps_rel).real
    kappa, kappa_s = values[0], values[1]
    U = values[2] + s * values[3]
    U_s = values[4] + s * values[5]
    U_ss = values[6] + s * values[7]

    V = -U_s / kappa
    V_alpha = -s_alpha * (kappa_s / kappa) * V - (s_alpha / kappa) * U_ss
    return V_alpha - s_alpha * kappa * U


# ---------------------------------------------------------------------------
# Time stepping
# ---------------------------------------------------------------------------

def runge_kutta4(f: Callable[[float, np.ndarray], np.ndarray], t0: float, h: float, y0: np.ndarray) -> np.ndarray:
    """classic 4th order method"""
    k = np.empty((4, len(y0)), dtype=y0.dtype)
    k[0] = f(t0, y0)
    k[1] = f(t0 + 0.5 * h, y0 + 0.5 * h * k[0])
    k[2] = f(t0 + 0.5 * h, y0 + 0.5 * h * k[1])
    k[3] = f(t0 + h, y0 + h * k[2])
    return y0 + h * (1 / 6 * k[0] + 1 / 3 * k[1] + 1 / 3 * k[2] + 1 / 6 * k[3])


class _FieldCache:
    """Fields keyed by stage time; each RK4 step touches three distinct times."""

    def __init__(self, phi_star: NormalizedMonitor, n2: int, kappa0: Optional[NormalizedMonitor]) -> None:
        self._phi_star = phi_star
        self._n2 = n2
        self._kappa0 = kappa0
        self._fields: Dict[float, EvolutionFields] = {}

    def __call__(self, t: float) -> EvolutionFields:
        key = round(t, 14)
        if key not in self._fields:
            if len(self._fields) > 3:
                self._fields.pop(min(self._fields))
            self._fields[key] = build_fields(self._phi_star, t, self._n2, self._kappa0)
        return self._fields[key]


def equidistribution_residual(
    state: SpacingState,
    phi_star: NormalizedMonitor,
    eps_rel: Optional[float] = None,
) -> float:
    """max_j |s_alpha phi*(s(alpha_j)) - mean| / mean of the product."""
    s = _arclength_nodes(np.asarray(state.s_alpha))
    phi = nufft_type2_many(s, [phi_star.phi_star], eps_rel=eps_rel)[0].real
    product = state.s_alpha * phi
    mean = float(np.mean(product))
    return float(np.max(np.abs(product - mean))) / mean


def evolve(
    phi_star: NormalizedMonitor,
    n2: int,
    dt: float,
    eps_rel: Optional[float] = None,
    kappa0: Optional[NormalizedMonitor] = None,
    initial: Optional[SpacingState] = None,
    trace_id: Optional[str] = None,
) -> EvolutionResult:
    """Integrate the spacing from t = 0 to t = 1 with fixed-step RK4.

    Parameters
    ----------
    phi_star:
        Normalized target monitor (terminal curvature).
    n2:
        Even size of the alpha-grid.
    dt:
        Step size; the final step is shortened so the run ends at t = 1.
    kappa0, initial:
        Warm start: the previous normalized monitor and its equidistributed
        spacing.  Both or neither must be given.

    Raises
    ------
    SpacingPositivityError
        If s_alpha becomes nonpositive; the message carries the time.
    """
    if (kappa0 is None) != (initial is None):
        raise ParameterError("warm start needs both kappa0 and initial", component="evolution")
    if not 0.0 < dt <= 0.25:
        raise ParameterError(f"dt must lie in (0, 0.25], got {dt}", component="evolution")
    if initial is not None and initial.n != n2:
        raise ParameterError(f"initial spacing has {initial.n} nodes, expected {n2}", component="evolution")

    params = {"n2": n2, "dt": dt, "monitor": phi_star.name, "warm_start": kappa0 is not None}
    with timed_operation("evolution", "evolve", params, trace_id) as op:
        fields_at = _FieldCache(phi_star, n2, kappa0)
        metrics = MetricsCollector()

        def f(t: float, s_alpha: np.ndarray) -> np.ndarray:
            return rhs(SpacingState(t, s_alpha), fields_at(t), eps_rel)

        y = np.array(initial.s_alpha if initial is not None else np.ones(n2), dtype=float)
        t = 0.0
        steps = 0
        max_drift = 0.0
        warned = False
        n_steps = int(np.ceil(1.0 / dt - 1e-9))
        report_every = max(1, n_steps // 10)
        log_stage_event("evolution", "evolve_started", {**params, "steps": n_steps}, trace_id)

        while t < 1.0 - 1e-14:
            h = min(dt, 1.0 - t)
            try:
                y = runge_kutta4(f, t, h, y)
            except MonotonicityLossError as exc:
                raise SpacingPositivityError(str(exc), t) from exc
            t = 1.0 if steps + 1 >= n_steps else t + h
            steps += 1
            if not np.all(np.isfinite(y)):
                raise SpacingPositivityError("s_alpha is no longer finite", t)
            if y.min() <= 0.0:
                raise SpacingPositivityError(f"s_alpha nonpositive: min = {y.min():.3e}", t)
            drift = abs(float(np.mean(y)) - 1.0)
            max_drift = max(max_drift, drift)
            if drift > DRIFT_WARN_TOL and not warned:
                warned = True
                logger.warning("Mean spacing drift", trace_id, {"t": t, "drift": drift})
                metrics.record_warning("evolution", "mean_drift", f"drift {drift:.3e} at t={t:.6g}")
            if steps % report_every == 0:
                log_stage_event(
                    "evolution", "progress",
                    {"t": round(t, 6), "min_s_alpha": float(y.min()), "drift": drift},
                    trace_id,
                )

        state = SpacingState(1.0, y)
        residual = equidistribution_residual(state, phi_star, eps_rel)
        metrics.record_diagnostic("equidistribution_residual", residual)
        metrics.record_diagnostic("mean_drift", max_drift)
        op.summary = f"steps={steps} residual={residual:.3e} max_drift={max_drift:.3e}"
        return EvolutionResult(
            state=state,
            steps=steps,
            residual=residual,
            max_drift=max_drift,
            monitor_name=phi_star.name,
            warnings=metrics.warning_kinds("evolution") if warned else [],
        )
