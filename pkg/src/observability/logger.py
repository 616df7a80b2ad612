"""
Structured JSON logging for the curve reparametrization toolkit.

Every record is a single JSON line carrying the emitting component, an
optional trace_id correlating the records of one pipeline run, and an
``extra_data`` payload with the numerical diagnostics of the event.

Usage:
    from src.observability.logger import get_logger, log_operation, log_stage_event

    logger = get_logger("evolution")
    logger.info("RK4 progress", extra_data={"t": 0.5, "min_s_alpha": 0.31})

    log_operation("invariants", "extract", {"n1": 256}, "L=6.79", 12.5, trace_id)
    log_stage_event("pipeline", "stage_finished", {"stage": "evolve"}, trace_id)
"""

import json
import logging
import sys
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from src.config.settings import get_settings


# ---------------------------------------------------------------------------
# JSON Formatter
# ---------------------------------------------------------------------------

class _JsonFormatter(logging.Formatter):
    """Formats each log record as a single-line JSON object."""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "trace_id": getattr(record, "trace_id", None),
            "component": getattr(record, "component", None),
            "message": record.getMessage(),
        }

        extra_data = getattr(record, "extra_data", None)
        if extra_data is not None:
            entry["extra_data"] = extra_data

        if record.exc_info and record.exc_info[1] is not None:
            entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(entry, default=str)


# ---------------------------------------------------------------------------
# ReparamLogger
# ---------------------------------------------------------------------------

class ReparamLogger:
    """Wrapper around :class:`logging.Logger` that injects the structured
    fields (component, trace_id, extra_data) into every record.

    Instances are created via :func:`get_logger`.
    """

    def __init__(self, name: str) -> None:
        self._logger = logging.getLogger(f"reparam.{name}")
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False
        self._name = name

        if not self._logger.handlers:
            self._attach_handlers()

    def _attach_handlers(self) -> None:
        settings = get_settings()
        json_fmt = _JsonFormatter()

        # stderr keeps stdout free for CLI output
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(getattr(logging, settings.log_level.upper(), logging.INFO))
        console.setFormatter(json_fmt)
        self._logger.addHandler(console)

        if settings.log_dir:
            log_dir = Path(settings.log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(str(log_dir / "reparam.log"), encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(json_fmt)
            self._logger.addHandler(file_handler)

    @property
    def name(self) -> str:
        return self._name

    def _log(
        self,
        level: int,
        message: str,
        trace_id: Optional[str] = None,
        extra_data: Optional[Dict[str, Any]] = None,
        component: Optional[str] = None,
    ) -> None:
        extra = {
            "component": component or self._name,
            "trace_id": trace_id,
            "extra_data": extra_data,
        }
        self._logger.log(level, message, extra=extra)

    def debug(self, message: str, trace_id: Optional[str] = None,
              extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log(logging.DEBUG, message, trace_id, extra_data)

    def info(self, message: str, trace_id: Optional[str] = None,
             extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log(logging.INFO, message, trace_id, extra_data)

    def warning(self, message: str, trace_id: Optional[str] = None,
                extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log(logging.WARNING, message, trace_id, extra_data)

    def error(self, message: str, trace_id: Optional[str] = None,
              extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log(logging.ERROR, message, trace_id, extra_data)


# ---------------------------------------------------------------------------
# Module-level factory & convenience helpers
# ---------------------------------------------------------------------------

_loggers: Dict[str, ReparamLogger] = {}
_logger_lock = threading.Lock()


def get_logger(name: str) -> ReparamLogger:
    """Return a :class:`ReparamLogger` for *name*, creating one if needed.

    Parameters
    ----------
    name:
        Component name, e.g. ``"nufft"``, ``"evolution"``, ``"cli"``.
    """
    if name in _loggers:
        return _loggers[name]
    with _logger_lock:
        if name not in _loggers:
            _loggers[name] = ReparamLogger(name)
        return _loggers[name]


def log_operation(
    component: str,
    operation: str,
    params: Optional[Dict[str, Any]],
    summary: Any,
    latency_ms: float,
    trace_id: Optional[str] = None,
) -> None:
    """Log a structured record of a numerical operation.

    Parameters
    ----------
    component:
        Module that ran the operation.
    operation:
        Operation name (``"extract"``, ``"evolve"``, ...).
    params:
        Scalar parameters of the call.
    summary:
        Short description of the result (stringified and clipped).
    latency_ms:
        Wall-clock time in milliseconds.
    trace_id:
        Optional correlation id of the enclosing pipeline run.
    """
    get_logger(component).debug(
        f"Operation: {operation}",
        trace_id=trace_id,
        extra_data={
            "event_type": "operation",
            "operation": operation,
            "params": params,
            "result_summary": str(summary)[:500],
            "latency_ms": round(latency_ms, 2),
        },
    )


def log_stage_event(
    component: str,
    event_type: str,
    data: Optional[Dict[str, Any]] = None,
    trace_id: Optional[str] = None,
) -> None:
    """Log a lifecycle or diagnostic event (stage boundaries, warnings, progress)."""
    get_logger(component).info(
        f"Event: {event_type}",
        trace_id=trace_id,
        extra_data={"event_type": event_type, **(data or {})},
    )
