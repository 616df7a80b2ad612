"""
Pipeline orchestrator for static curve reparametrization.

Coordinates the full run:
1. Extract: arclength invariants of the input curve
2. Normalize: rescale the monitor to the curve length
3. Evolve: equidistributing local spacing
4. Refine: resample the invariants at the new nodes
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from src.config.settings import PipelineConfig
from src.evolution import EvolutionResult, evolve
from src.geometry import PlanarCurveSamples
from src.invariants import ArclengthInvariants, default_n_up, extract, invert
from src.monitor import NormalizedMonitor, load_monitor, normalize
from src.observability.logger import get_logger, log_stage_event
from src.observability.metrics import MetricsCollector
from src.resample import RefinedCurve, refine
from src.state.artifacts import read_curve, write_curve, write_invariants, write_spacing
from src.state.models import RunSummary
from src.validation.examples import get_example

logger = get_logger("pipeline")


@dataclass
class PipelineResult:
    """In-memory products of one run."""
    curve: PlanarCurveSamples
    invariants: ArclengthInvariants
    monitor: NormalizedMonitor
    evolution: EvolutionResult
    refined: RefinedCurve
    summary: RunSummary


class ReparametrizationPipeline:
    """Runs extract -> normalize -> evolve -> refine for one configuration.

    Every stage is bracketed by ``stage_started`` / ``stage_finished``
    events carrying the run's trace_id; declared outputs are written at
    the end together with the metrics summary.
    """

    def __init__(self, config: PipelineConfig) -> None:
        """Initialize the pipeline.

        Parameters
        ----------
        config : PipelineConfig
            Validated run configuration.
        """
        self.config = config
        self.metrics = MetricsCollector()

    # -- inputs -------------------------------------------------------------

    def load_curve(self) -> PlanarCurveSamples:
        source = self.config.curve
        if source.path is not None:
            curve = read_curve(source.path)
            if curve.n != self.config.n1:
                logger.warning(
                    "Curve file size differs from n1; using the file's size",
                    extra_data={"file_n": curve.n, "n1": self.config.n1},
                )
            return curve
        return get_example(source.example, source.params).sample(self.config.n1)

    def describe_curve(self) -> str:
        source = self.config.curve
        if source.path is not None:
            return source.path
        return get_example(source.example, source.params).describe()

    # -- run ----------------------------------------------------------------

    def run(self, trace_id: Optional[str] = None) -> PipelineResult:
        """Execute all stages and write the configured outputs.

        Returns
        -------
        PipelineResult
            Curve, invariants, normalized monitor, evolution result,
            refined curve and the run summary.
        """
        cfg = self.config
        trace_id = trace_id or str(uuid.uuid4())
        logger.info("Starting reparametrization run", trace_id=trace_id,
                    extra_data={"curve": self.describe_curve(), "monitor": cfg.monitor.reference})

        try:
            curve = self.load_curve()
            n_up = cfg.n_up or default_n_up(curve.n, curve.kind)
            k_max = cfg.k_max or curve.n // 2

            self._stage(trace_id, "extract", {"n1": curve.n, "n_up": n_up, "k_max": k_max})
            inv = extract(curve, n_up, k_max, cfg.eps_rel, trace_id)
            self._stage(trace_id, "extract", {"L": inv.L}, finished=True)

            self._stage(trace_id, "normalize", {"monitor": cfg.monitor.reference})
            phi = normalize(load_monitor(cfg.monitor.reference), inv.L, cfg.n2)
            self._stage(trace_id, "normalize", {"l1_norm": phi.l1_norm}, finished=True)

            self._stage(trace_id, "evolve", {"n2": cfg.n2, "dt": cfg.dt})
            evolution = evolve(phi, cfg.n2, cfg.dt, cfg.eps_rel, trace_id=trace_id)
            self._stage(trace_id, "evolve", {"residual": evolution.residual}, finished=True)

            self._stage(trace_id, "refine", {"n3": cfg.n3})
            refined = refine(inv, evolution.state, cfg.n3, cfg.eps_rel, phi.name, trace_id)
            self._stage(trace_id, "refine", {"n3": refined.n}, finished=True)
        except Exception as exc:
            logger.error(f"Run failed: {exc}", trace_id=trace_id)
            raise

        summary = RunSummary(
            trace_id=trace_id,
            curve=self.describe_curve(),
            monitor=phi.name,
            n1=curve.n,
            n_up=n_up,
            k_max=k_max,
            n2=cfg.n2,
            n3=cfg.n3,
            dt=cfg.dt,
            L=inv.L,
            l1_norm=phi.l1_norm,
            steps=evolution.steps,
            residual=evolution.residual,
            max_drift=evolution.max_drift,
        )
        summary.outputs = self._write_outputs(inv, evolution, refined, phi.name)
        logger.info("Run complete", trace_id=trace_id,
                    extra_data={"residual": evolution.residual, "outputs": summary.outputs})
        return PipelineResult(curve, inv, phi, evolution, refined, summary)

    # -- helpers ------------------------------------------------------------

    def _stage(self, trace_id: str, stage: str, data: Dict, finished: bool = False) -> None:
        event = "stage_finished" if finished else "stage_started"
        log_stage_event("pipeline", event, {"stage": stage, **data}, trace_id)

    def _write_outputs(
        self,
        inv: ArclengthInvariants,
        evolution: EvolutionResult,
        refined: RefinedCurve,
        monitor_name: str,
    ) -> Dict[str, str]:
        out = self.config.outputs
        written: Dict[str, str] = {}
        if out.invariants:
            written["invariants"] = write_invariants(inv, out.invariants)
        if out.spacing:
            written["spacing"] = write_spacing(
                evolution.state, out.spacing, monitor_name, evolution.residual
            )
        if out.curve:
            written["curve"] = write_curve(refined.x, refined.y, refined.kind, out.curve)
        if out.metrics:
            written["metrics"] = self.metrics.export_to_json(out.metrics)
        return written


def identity_error(result: PipelineResult) -> float:
    """Max distance of the refined points to the equispaced arclength samples.

    Zero to roundoff for a uniform monitor, where the pipeline reduces to
    the identity on the arclength parametrization.
    """
    refined = result.refined
    inv = result.invariants
    x, y = invert(inv, np.arange(refined.n) * (inv.L / refined.n))
    scale = max(float(np.max(np.abs(x))), float(np.max(np.abs(y))))
    return float(np.max(np.hypot(refined.x - x, refined.y - y))) / scale


def create_pipeline(config: PipelineConfig) -> ReparametrizationPipeline:
    """Factory function to create a configured pipeline.

    Parameters
    ----------
    config : PipelineConfig
        Validated run configuration.

    Returns
    -------
    ReparametrizationPipeline
        Pipeline ready to :meth:`~ReparametrizationPipeline.run`.
    """
    return ReparametrizationPipeline(config)
