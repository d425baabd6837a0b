"""
Shared pytest fixtures for qscatter
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("qscatter", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qscatter")

collect_ignore = ["examples", ".venv"]


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Keep log files and settings out of the working tree"""
    monkeypatch.setenv("LOG_FILE", str(tmp_path / "logs" / "qscatter.log"))
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    for name in ("QSCATTER_THREADS", "QSCATTER_FD_STEP", "QSCATTER_ORACLE_STEP", "QSCATTER_SEED"):
        monkeypatch.delenv(name, raising=False)
    yield


@pytest.fixture
def kink_window():
    """A separation comfortably above the critical one"""
    return 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def tmp_output(tmp_path):
    """Path for a command's --output inside a not yet created directory"""
    return tmp_path / "out" / "result"
