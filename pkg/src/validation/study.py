"""
Convergence studies and golden references.

Three study kinds produce an :class:`ErrorTable`:

    step1_convergence   extraction error against the analytic curve over an N1 sweep
    rk4_convergence     equidistribution residual over a dt sweep
    refinement          refined representations (N3 sweep) against a
                        full-resolution reference, next to the arclength
                        representation with the same number of points

Usage:
    from src.validation.study import StudyParams, run_study

    table = run_study("step1_convergence", StudyParams(example="droplet", sweep=[32, 64, 128]))
    table.to_csv("out/step1.csv")
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.errors import ArtifactFormatError, ParameterError
from src.evolution import SpacingState, evolve
from src.invariants import ArclengthInvariants, default_n_up, extract, invert
from src.monitor import load_monitor, normalize
from src.observability.logger import log_stage_event
from src.observability.timing import timed_operation
from src.resample import refine
from src.spectral.series import TWO_PI
from src.state.artifacts import read_invariants, write_invariants
from src.validation.compare import compare_invariants
from src.validation.examples import ExampleCurve, get_example

StudyKind = Literal["step1_convergence", "rk4_convergence", "refinement"]
STUDY_KINDS = ("step1_convergence", "rk4_convergence", "refinement")


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

class ErrorRow(BaseModel):
    """One sweep point.  Unused columns stay None."""
    n: int = Field(..., gt=0, description="Sweep size (N1 or N3)")
    n1: Optional[int] = Field(default=None, description="Samples of the arclength representation")
    n3: Optional[int] = Field(default=None, description="Samples of the refined representation")
    dt: Optional[float] = Field(default=None, gt=0)
    err_arc_linf: Optional[float] = Field(default=None, ge=0)
    err_ref_l2: Optional[float] = Field(default=None, ge=0)
    err_ref_linf: Optional[float] = Field(default=None, ge=0)
    residual: Optional[float] = Field(default=None, ge=0)


COLUMNS = [
    "n", "n1", "n3", "dt", "err_arc_linf", "err_ref_l2", "err_ref_linf", "residual",
]


class ErrorTable(BaseModel):
    """Rows of a study, sorted by N (then by decreasing dt)."""
    kind: str
    example: str
    rows: List[ErrorRow] = Field(default_factory=list)

    def sorted(self) -> "ErrorTable":
        rows = sorted(self.rows, key=lambda r: (r.n, -(r.dt or 0.0)))
        return ErrorTable(kind=self.kind, example=self.example, rows=rows)

    def column(self, name: str) -> List[Optional[float]]:
        return [getattr(r, name) for r in self.rows]

    def to_csv(self, path: str) -> str:
        dest = Path(path).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            fh.write(f"# kind={self.kind}\n# example={self.example}\n")
            writer = csv.writer(fh)
            writer.writerow(COLUMNS)
            for row in self.rows:
                writer.writerow(["" if getattr(row, c) is None else repr(getattr(row, c)) for c in COLUMNS])
        return str(dest)

    @classmethod
    def from_csv(cls, path: str) -> "ErrorTable":
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except FileNotFoundError as exc:
            raise ArtifactFormatError(f"error table not found: {path}") from exc
        meta: Dict[str, str] = {}
        body = []
        for line in lines:
            if line.startswith("#"):
                key, _, value = line.lstrip("# ").partition("=")
                meta[key] = value
            elif line.strip():
                body.append(line)
        reader = csv.DictReader(body)
        try:
            rows = [
                ErrorRow(**{k: v for k, v in record.items() if v not in ("", None)})
                for record in reader
            ]
        except (ValueError, TypeError) as exc:
            raise ArtifactFormatError(f"{path}: malformed row: {exc}") from exc
        return cls(kind=meta.get("kind", "unknown"), example=meta.get("example", "unknown"), rows=rows)


def fitted_slope(x: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(errors) against log(x)."""
    lx = np.log(np.asarray(x, dtype=float))
    le = np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(lx, le, 1)[0])


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

class StudyParams(BaseModel):
    """Sweep definition shared by all study kinds."""

    example: str = Field(default="droplet")
    example_params: Dict[str, float] = Field(default_factory=dict)
    sweep: List[int] = Field(default_factory=list, description="N1 or N3 values")
    dts: List[float] = Field(default_factory=list, description="Step sizes (rk4 study)")
    monitor: str = Field(default="phi1")
    n2: int = Field(default=128, gt=0)
    dt: float = Field(default=1e-3, gt=0, le=0.25)
    n_up_factor: Optional[int] = Field(default=None, ge=1, description="N_up = factor * N; default rule when unset")
    n_up_cap: int = Field(default=65536, gt=0)
    ref_n1: int = Field(default=4096, gt=0)
    ref_n_up: Optional[int] = Field(default=None)
    ref_k_max: Optional[int] = Field(default=None)
    eps_rel: Optional[float] = Field(default=None)
    cache_dir: Optional[str] = Field(default=None)

    @model_validator(mode="after")
    def _even_sizes(self) -> "StudyParams":
        for name in ("n2", "ref_n1"):
            if getattr(self, name) % 2:
                raise ValueError(f"{name} must be even")
        if any(n % 2 or n < 4 for n in self.sweep):
            raise ValueError(f"sweep sizes must be even and >= 4, got {self.sweep}")
        return self


def _n_up(params: StudyParams, n: int, example: ExampleCurve) -> int:
    if params.n_up_factor is None:
        return default_n_up(n, example.kind)
    return max(n, min(params.n_up_factor * n, params.n_up_cap))


def _dense_error(example: ExampleCurve, inv: ArclengthInvariants, eps_rel: Optional[float]) -> float:
    dense = 4 * inv.k_max
    x, y = invert(inv, np.arange(dense) * (inv.L / dense), eps_rel)
    return example.analytic_error(x, y)


# ---------------------------------------------------------------------------
# Golden references
# ---------------------------------------------------------------------------

def reference_invariants(
    example: ExampleCurve,
    n1: int,
    n_up: Optional[int] = None,
    k_max: Optional[int] = None,
    cache_dir: Optional[str] = None,
    eps_rel: Optional[float] = None,
) -> ArclengthInvariants:
    """Full-resolution invariants of an example, cached as a JSON artifact."""
    n_up = n_up or default_n_up(n1, example.kind)
    k_max = k_max or n1 // 2
    path = None
    if cache_dir is not None:
        tag = "_".join(f"{k}{v:g}" for k, v in sorted(example.params.items()))
        path = Path(cache_dir) / f"{example.name}_{tag}_n1{n1}_nup{n_up}_k{k_max}.json"
        if path.exists():
            return read_invariants(str(path))
    inv = extract(example.sample(n1), n_up, k_max, eps_rel)
    if path is not None:
        write_invariants(inv, str(path))
    return inv


# ---------------------------------------------------------------------------
# Studies
# ---------------------------------------------------------------------------

def _step1(params: StudyParams, example: ExampleCurve) -> List[ErrorRow]:
    rows = []
    for n1 in params.sweep:
        inv = extract(example.sample(n1), _n_up(params, n1, example), n1 // 2, params.eps_rel)
        rows.append(ErrorRow(n=n1, n1=n1, err_arc_linf=_dense_error(example, inv, params.eps_rel)))
    return rows


def _rk4(params: StudyParams, example: ExampleCurve) -> List[ErrorRow]:
    if not params.dts:
        raise ParameterError("rk4_convergence needs a dt sweep")
    phi = normalize(load_monitor(params.monitor), TWO_PI, params.n2)
    rows = []
    for dt in params.dts:
        result = evolve(phi, params.n2, dt, params.eps_rel)
        rows.append(ErrorRow(n=params.n2, dt=dt, residual=result.residual))
    return rows


def _refinement(params: StudyParams, example: ExampleCurve) -> List[ErrorRow]:
    ref = reference_invariants(
        example, params.ref_n1, params.ref_n_up, params.ref_k_max, params.cache_dir, params.eps_rel
    )
    monitor = load_monitor(params.monitor)
    spacings: Dict[int, SpacingState] = {}
    rows = []
    for n in params.sweep:
        # the spacing grid never exceeds the output size
        n2 = min(params.n2, n)
        if n2 not in spacings:
            phi = normalize(monitor, ref.L, n2)
            spacings[n2] = evolve(phi, n2, params.dt, params.eps_rel).state
        refined = refine(ref, spacings[n2], n, params.eps_rel, monitor_name=params.monitor)
        re_extracted = extract(
            refined.to_curve_samples(), _n_up(params, n, example), n // 2, params.eps_rel
        )
        comparison = compare_invariants(ref, re_extracted, eps_rel=params.eps_rel)
        arclength = extract(example.sample(n), _n_up(params, n, example), n // 2, params.eps_rel)
        rows.append(ErrorRow(
            n=n,
            n1=n,
            n3=n,
            err_arc_linf=_dense_error(example, arclength, params.eps_rel),
            err_ref_l2=comparison.l2_rel,
            err_ref_linf=_dense_error(example, re_extracted, params.eps_rel),
        ))
    return rows


_RUNNERS = {
    "step1_convergence": _step1,
    "rk4_convergence": _rk4,
    "refinement": _refinement,
}


def run_study(kind: str, params: StudyParams, trace_id: Optional[str] = None) -> ErrorTable:
    """Run one study and return its rows sorted by N."""
    if kind not in _RUNNERS:
        raise ParameterError(f"unknown study kind '{kind}'; choose from {', '.join(STUDY_KINDS)}")
    example = get_example(params.example, params.example_params)
    with timed_operation("validation", "run_study", {"kind": kind, "example": example.describe()}, trace_id) as op:
        rows = _RUNNERS[kind](params, example)
        for row in rows:
            log_stage_event("validation", "study_row", row.model_dump(exclude_none=True), trace_id)
        table = ErrorTable(kind=kind, example=example.describe(), rows=rows).sorted()
        op.summary = f"{len(rows)} rows"
        return table
