"""
Readers and writers for artifact files.

JSON documents (invariants, spacing, reports) are validated through the
models in :mod:`src.state.models`; curve files are comma-delimited text
with a ``# kind=closed|hperiodic`` header line and columns alpha, x, y.
Every parse or schema failure raises :class:`ArtifactFormatError`.

Usage:
    from src.state.artifacts import read_curve, write_invariants

    curve = read_curve("input.csv")
    write_invariants(extract(curve), "out/inv.json")
"""

from __future__ import annotations

from pathlib import Path
from typing import Type, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from src.errors import ArtifactFormatError
from src.evolution import SpacingState
from src.geometry import CurveKind, PlanarCurveSamples
from src.invariants import ArclengthInvariants
from src.observability.logger import get_logger
from src.spectral.series import UniformGrid
from src.state.models import InvariantsDocument, SpacingDocument

logger = get_logger("state")

ModelT = TypeVar("ModelT", bound=BaseModel)

ALPHA_TOL = 1e-9


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------

def write_document(document: BaseModel, path: str) -> str:
    """Serialize a pydantic document to *path*; returns the absolute path."""
    dest = Path(path).resolve()
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(document.model_dump_json(indent=2), encoding="utf-8")
    logger.debug("Artifact written", extra_data={"path": str(dest), "type": type(document).__name__})
    return str(dest)


def read_document(path: str, model: Type[ModelT]) -> ModelT:
    """Parse and validate a JSON document."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ArtifactFormatError(f"artifact not found: {path}") from exc
    try:
        return model.model_validate_json(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or model.__name__
        raise ArtifactFormatError(f"{path}: {where}: {first.get('msg')}") from exc


def write_invariants(inv: ArclengthInvariants, path: str) -> str:
    return write_document(InvariantsDocument.from_invariants(inv), path)


def read_invariants(path: str) -> ArclengthInvariants:
    return read_document(path, InvariantsDocument).to_invariants()


def write_spacing(state: SpacingState, path: str, monitor: str = "custom", residual=None) -> str:
    return write_document(SpacingDocument.from_state(state, monitor, residual), path)


def read_spacing(path: str) -> SpacingState:
    return read_document(path, SpacingDocument).to_state()


# ---------------------------------------------------------------------------
# Curve files
# ---------------------------------------------------------------------------

def write_curve(x: np.ndarray, y: np.ndarray, kind: CurveKind, path: str) -> str:
    """Write alpha, x, y columns at the nodes of UniformGrid(len(x))."""
    dest = Path(path).resolve()
    dest.parent.mkdir(parents=True, exist_ok=True)
    alpha = UniformGrid(len(x)).nodes
    np.savetxt(
        str(dest),
        np.column_stack([alpha, x, y]),
        delimiter=",",
        fmt="%.17e",
        header=f"kind={CurveKind(kind).value}\nalpha,x,y",
    )
    return str(dest)


def write_curve_samples(curve: PlanarCurveSamples, path: str) -> str:
    return write_curve(curve.x, curve.y, curve.kind, path)


def read_curve(path: str) -> PlanarCurveSamples:
    """Read a curve file; the alpha column must be the uniform grid."""
    source = Path(path)
    try:
        lines = source.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError as exc:
        raise ArtifactFormatError(f"curve file not found: {path}") from exc

    kind = CurveKind.closed
    for line in lines:
        if not line.startswith("#"):
            break
        text = line.lstrip("#").strip()
        if text.startswith("kind="):
            try:
                kind = CurveKind(text.split("=", 1)[1].strip())
            except ValueError as exc:
                raise ArtifactFormatError(f"{path}: unknown curve kind '{text}'") from exc

    try:
        data = np.loadtxt(str(source), delimiter=",", comments="#", ndmin=2)
    except ValueError as exc:
        raise ArtifactFormatError(f"{path}: cannot parse numeric columns: {exc}") from exc
    if data.shape[1] != 3:
        raise ArtifactFormatError(f"{path}: expected 3 columns alpha,x,y, got {data.shape[1]}")
    n = data.shape[0]
    if n < 4 or n % 2:
        raise ArtifactFormatError(f"{path}: sample count must be even and >= 4, got {n}")
    if np.max(np.abs(data[:, 0] - UniformGrid(n).nodes)) > ALPHA_TOL:
        raise ArtifactFormatError(f"{path}: alpha column is not the uniform grid 2 pi j / {n}")
    return PlanarCurveSamples(data[:, 1], data[:, 2], kind)
