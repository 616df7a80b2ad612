"""Timing wrapper shared by the public numerical operations."""

from __future__ import annotations

import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

from src.observability.logger import log_operation
from src.observability.metrics import MetricsCollector


class OperationRecord:
    """Mutable slot the wrapped block fills with a result summary."""

    def __init__(self) -> None:
        self.summary: Any = None


@contextmanager
def timed_operation(
    component: str,
    operation: str,
    params: Optional[Dict[str, Any]] = None,
    trace_id: Optional[str] = None,
) -> Iterator[OperationRecord]:
    """Time a block, log it via :func:`log_operation` and record metrics.

    Exceptions are recorded against *component* and re-raised unchanged.
    """
    record = OperationRecord()
    start = time.perf_counter()
    try:
        yield record
    except Exception as exc:
        MetricsCollector().record_error(component, type(exc).__name__, str(exc))
        raise
    latency_ms = (time.perf_counter() - start) * 1000.0
    MetricsCollector().record_operation(component, operation, latency_ms)
    log_operation(component, operation, params, record.summary, latency_ms, trace_id)
