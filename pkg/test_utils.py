"""
Tests for the utils package
"""

import json
import logging

import pytest

from utils.config import Settings
from utils.errors import InvalidArgumentError, QScatterError, RootIsolationError, VerificationError
from utils.logger import log_performance, setup_logger
from utils.sweep_pool import SweepPool
from utils.table_writer import ResultTable, write_atomic
from utils.validation import require_finite, require_positive, require_positive_int, require_real_momentum


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("QSCATTER_THREADS", "4")
    monkeypatch.setenv("QSCATTER_FD_STEP", "2e-5")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    settings = Settings.from_env()
    assert settings.threads == 4
    assert settings.fd_step == 2e-5
    assert settings.log_level == "DEBUG"
    assert settings.seed == 20240521

    monkeypatch.setenv("QSCATTER_THREADS", "0")
    assert Settings.from_env().threads == 1


def test_settings_reject_malformed_values(monkeypatch):
    monkeypatch.setenv("QSCATTER_SEED", "abc")
    with pytest.raises(InvalidArgumentError):
        Settings.from_env()

    monkeypatch.delenv("QSCATTER_SEED")
    monkeypatch.setenv("QSCATTER_FD_STEP", "-1e-5")
    with pytest.raises(InvalidArgumentError):
        Settings.from_env()


def test_validation_helpers():
    assert require_finite("x", 3) == 3.0
    assert require_positive("x", 0.5) == 0.5
    assert require_positive_int("n", 3) == 3
    assert require_real_momentum(1.0) == 1.0
    for bad in (float("nan"), float("inf"), "1", True, None):
        with pytest.raises(InvalidArgumentError):
            require_finite("x", bad)
    with pytest.raises(InvalidArgumentError):
        require_positive("x", 0.0)
    with pytest.raises(InvalidArgumentError):
        require_positive_int("n", 2.0)
    with pytest.raises(InvalidArgumentError):
        require_positive_int("n", 0)


def test_error_hierarchy():
    assert issubclass(InvalidArgumentError, QScatterError)
    assert issubclass(InvalidArgumentError, ValueError)
    error = RootIsolationError("no roots", grid=[0.0, 1.0], values=[1.0, 2.0])
    assert error.grid == [0.0, 1.0] and error.values == [1.0, 2.0]
    assert VerificationError(["a", "b"]).failed_checks == ["a", "b"]


def test_sweep_pool_preserves_order():
    items = list(range(50))
    assert SweepPool(4).map(lambda x: x * x, items) == [x * x for x in items]
    assert SweepPool(1).map(lambda x: -x, items) == [-x for x in items]
    assert SweepPool(3).map(lambda x: x, []) == []


def test_result_table_json_and_csv():
    table = ResultTable(command="demo", params={"a": 1.0}, columns=["k", "label"])
    table.add_row([0.1, "bound"])
    table.add_row([2.0, None])
    payload = json.loads(table.render("json"))
    assert payload == {"command": "demo", "params": {"a": 1.0}, "columns": ["k", "label"],
                       "rows": [[0.1, "bound"], [2.0, None]]}
    assert table.render("csv") == "k,label\r\n0.1,bound\r\n2.0,\r\n"
    with pytest.raises(ValueError):
        table.add_row([1.0])
    with pytest.raises(ValueError):
        table.render("xml")


def test_non_finite_values_serialise_as_null():
    table = ResultTable(command="verify", params={"worst": float("inf"), "nested": {"gap": float("nan")}},
                        columns=["name", "observed"])
    table.add_row(["oracle", float("inf")])
    text = table.render("json")
    assert "Infinity" not in text and "NaN" not in text
    payload = json.loads(text)
    assert payload["rows"] == [["oracle", None]]
    assert payload["params"] == {"worst": None, "nested": {"gap": None}}


def test_write_atomic_replaces_target(tmp_path):
    target = tmp_path / "result.json"
    target.write_text("old")
    write_atomic(str(target), "new\n")
    assert target.read_text() == "new\n"
    assert [p.name for p in tmp_path.iterdir()] == ["result.json"]


def test_setup_logger_writes_json(tmp_path, monkeypatch):
    log_file = tmp_path / "nested" / "run.log"
    monkeypatch.setenv("LOG_FILE", str(log_file))
    monkeypatch.setenv("LOG_LEVEL", "INFO")
    logger = setup_logger("qscatter-test-json")
    assert setup_logger("qscatter-test-json") is logger
    assert len(logger.handlers) == 2
    logger.info("hello", extra={"k": 1.5})
    for handler in logger.handlers:
        handler.flush()
    record = json.loads(log_file.read_text().splitlines()[-1])
    assert record["message"] == "hello" and record["k"] == 1.5
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


def test_log_performance(caplog):
    @log_performance
    def double(x):
        return 2 * x

    @log_performance
    def fail():
        raise QScatterError("bad")

    with caplog.at_level(logging.INFO):
        assert double(3) == 6
        with pytest.raises(QScatterError):
            fail()
    statuses = [getattr(r, "status", None) for r in caplog.records]
    assert "success" in statuses and "error" in statuses
