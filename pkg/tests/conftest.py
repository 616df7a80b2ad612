"""
Shared fixtures for the test suite.
"""

import numpy as np
import pytest

from src.config.settings import get_settings, reload_settings
from src.observability.metrics import MetricsCollector


@pytest.fixture(autouse=True)
def fresh_state(monkeypatch):
    """Start every test with default settings and empty metrics."""
    for var in ("REPARAM_NUFFT_BACKEND", "REPARAM_DEFAULT_EPS", "REPARAM_OVERSAMPLING",
                "REPARAM_LOG_DIR", "REPARAM_LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
    reload_settings()
    MetricsCollector().reset()
    yield
    # the environment may still hold a test's invalid values here
    get_settings.cache_clear()


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(20240611)
