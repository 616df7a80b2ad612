"""
Metrics collection for the curve reparametrization toolkit.

A thread-safe singleton :class:`MetricsCollector` accumulates operation
timings, warnings, errors and named numerical diagnostics (equidistribution
residuals, mean drift, closure defects) for a process.

Usage:
    from src.observability.metrics import MetricsCollector

    mc = MetricsCollector()
    mc.record_operation("nufft", "type1", 3.2)
    mc.record_warning("geometry", "resolution_tail", "tail 3e-9 above 1e-10")
    mc.record_diagnostic("equidistribution_residual", 4.1e-13)
    mc.export_to_json("out/metrics.json")
"""

import json
import threading
import time
from collections import defaultdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional


class MetricsCollector:
    """Singleton metrics collector; all public methods are thread-safe."""

    _instance: Optional["MetricsCollector"] = None
    _init_lock = threading.Lock()
    _initialized: bool = False

    def __new__(cls) -> "MetricsCollector":
        if cls._instance is None:
            with cls._init_lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if MetricsCollector._initialized:
            return
        with MetricsCollector._init_lock:
            if MetricsCollector._initialized:
                return
            self._lock = threading.Lock()
            self._start_time = time.monotonic()
            self._start_utc = datetime.now(timezone.utc).isoformat()
            # op_latency[component][operation] = [ms, ...]
            self._op_latency: Dict[str, Dict[str, List[float]]] = defaultdict(
                lambda: defaultdict(list)
            )
            # warnings[component] = [(kind, message, iso_timestamp), ...]
            self._warnings: Dict[str, List[tuple]] = defaultdict(list)
            # error_count[component][error_type] = int
            self._error_count: Dict[str, Dict[str, int]] = defaultdict(
                lambda: defaultdict(int)
            )
            self._error_messages: Dict[str, List[tuple]] = defaultdict(list)
            # diagnostics[name] = [value, ...] in recording order
            self._diagnostics: Dict[str, List[float]] = defaultdict(list)
            MetricsCollector._initialized = True

    # -- recording ----------------------------------------------------------

    def record_operation(self, component: str, operation: str, latency_ms: float) -> None:
        """Record one completed operation and its wall-clock time."""
        with self._lock:
            self._op_latency[component][operation].append(latency_ms)

    def record_warning(self, component: str, kind: str, message: str) -> None:
        """Record a non-fatal numerical warning (resolution tail, drift, ...)."""
        ts = datetime.now(timezone.utc).isoformat()
        with self._lock:
            self._warnings[component].append((kind, message, ts))

    def record_error(self, component: str, error_type: str, message: str) -> None:
        """Record an error occurrence."""
        ts = datetime.now(timezone.utc).isoformat()
        with self._lock:
            self._error_count[component][error_type] += 1
            self._error_messages[component].append((error_type, message, ts))

    def record_diagnostic(self, name: str, value: float) -> None:
        """Record a named scalar diagnostic."""
        with self._lock:
            self._diagnostics[name].append(float(value))

    # -- query --------------------------------------------------------------

    def get_summary(self) -> Dict[str, Any]:
        """Return a snapshot of all collected metrics as a plain dict."""
        with self._lock:
            return self._build_summary()

    def _build_summary(self) -> Dict[str, Any]:
        operations: Dict[str, Any] = {}
        for component, ops in self._op_latency.items():
            operations[component] = {
                op: {"count": len(values), "latency_ms": _latency_stats(values)}
                for op, values in ops.items()
            }

        warnings = {
            component: [
                {"kind": k, "message": m, "timestamp": ts} for k, m, ts in entries[-20:]
            ]
            for component, entries in self._warnings.items()
        }

        errors: Dict[str, Any] = {}
        for component, types in self._error_count.items():
            errors[component] = {
                "by_type": dict(types),
                "total": sum(types.values()),
                "recent": [
                    {"type": t, "message": m, "timestamp": ts}
                    for t, m, ts in self._error_messages[component][-10:]
                ],
            }

        diagnostics = {
            name: {"last": values[-1], "count": len(values), "max": max(values)}
            for name, values in self._diagnostics.items()
            if values
        }

        return {
            "collection_started": self._start_utc,
            "elapsed_seconds": round(time.monotonic() - self._start_time, 2),
            "operations": operations,
            "warnings": warnings,
            "errors": errors,
            "diagnostics": diagnostics,
        }

    def warning_kinds(self, component: str) -> List[str]:
        """Kinds of the warnings recorded for *component*, oldest first."""
        with self._lock:
            return [kind for kind, _, _ in self._warnings.get(component, [])]

    def export_to_json(self, filepath: str) -> str:
        """Write the current summary to *filepath*; returns the absolute path."""
        dest = Path(filepath).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        with open(str(dest), "w", encoding="utf-8") as fh:
            json.dump(self.get_summary(), fh, indent=2, default=str)
        return str(dest)

    def reset(self) -> None:
        """Clear all accumulated metrics.  Useful in tests."""
        with self._lock:
            self._start_time = time.monotonic()
            self._start_utc = datetime.now(timezone.utc).isoformat()
            self._op_latency.clear()
            self._warnings.clear()
            self._error_count.clear()
            self._error_messages.clear()
            self._diagnostics.clear()


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _latency_stats(values: List[float]) -> Dict[str, Any]:
    """Compute min / max / mean / p50 / p95 for a list of latencies."""
    if not values:
        return {"min": None, "max": None, "mean": None, "p50": None, "p95": None}

    sorted_v = sorted(values)
    n = len(sorted_v)

    def _percentile(p: float) -> float:
        idx = (p / 100.0) * (n - 1)
        lo = int(idx)
        hi = min(lo + 1, n - 1)
        frac = idx - lo
        return round(sorted_v[lo] * (1 - frac) + sorted_v[hi] * frac, 3)

    return {
        "min": round(sorted_v[0], 3),
        "max": round(sorted_v[-1], 3),
        "mean": round(sum(sorted_v) / n, 3),
        "p50": _percentile(50),
        "p95": _percentile(95),
    }
