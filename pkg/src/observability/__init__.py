"""Observability (structured logging, metrics, operation timing)."""

from src.observability.logger import (
    ReparamLogger,
    get_logger,
    log_operation,
    log_stage_event,
)
from src.observability.metrics import MetricsCollector
from src.observability.timing import timed_operation

__all__ = [
    "ReparamLogger",
    "get_logger",
    "log_operation",
    "log_stage_event",
    "MetricsCollector",
    "timed_operation",
]
