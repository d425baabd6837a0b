"""
Tests for the cross-module invariant suite
"""

import pytest

from invariant_suite import DEFAULT_ORACLE_SAMPLES, FIGURE_EXPECTED, CheckResult, InvariantSuite, SuiteReport, run_suite
from scattering_core import System
from utils.errors import VerificationError


def test_default_suite_passes():
    report = run_suite(oracle_samples=1)
    assert report.passed, [(c.name, c.observed, c.detail) for c in report.checks if not c.passed]
    names = {c.name for c in report.checks}
    assert {"two_delta_unitarity", "kink_jost_identity", "critical_separation", "zeta_values"} <= names


def test_equal_wells_meet_the_stated_tolerances():
    suite = InvariantSuite()
    assert suite.oracle_samples == DEFAULT_ORACLE_SAMPLES == 20
    report = suite.run_default(-2.0, -2.0, 1.0)
    assert report.passed, [(c.name, c.observed, c.detail) for c in report.checks if not c.passed]

    checks = {c.name: c for c in report.checks}
    for name in ("two_delta_jost_identity", "kink_jost_identity"):
        assert checks[name].threshold == 1e-12
        assert checks[name].observed < 1e-12
        assert checks[name].detail == "alpha=beta=-2.0"
    for name in ("two_delta_oracle_equivalence", "kink_oracle_equivalence"):
        assert checks[name].threshold == 1e-8
        assert checks[name].observed < 1e-8


def test_suite_with_user_couplings():
    report = run_suite(alpha=-0.7, beta=1.2, a=0.8, oracle_samples=0)
    assert report.passed, report.failed


def test_figure_suite_passes():
    suite = InvariantSuite(oracle_samples=0)
    report = suite.run_figures()
    assert len(report.checks) == len(FIGURE_EXPECTED)
    assert report.passed, [(c.name, c.detail) for c in report.checks if not c.passed]


def test_tiny_tolerance_fails_and_raises():
    report = run_suite(tolerance_scale=1e-30, oracle_samples=0)
    assert not report.passed
    assert "critical_separation" in report.failed
    with pytest.raises(VerificationError) as excinfo:
        report.raise_for_failures()
    assert excinfo.value.failed_checks == report.failed


def test_failing_check_is_recorded():
    suite = InvariantSuite()

    def broken():
        raise RuntimeError("boom")

    suite._run("broken", 1.0, broken)
    check = suite.report.checks[-1]
    assert not check.passed and check.detail == "boom"


def test_report_bookkeeping():
    report = SuiteReport([CheckResult("a", True, 0.0, 1.0), CheckResult("b", False, 2.0, 1.0)])
    assert report.failed == ["b"]
    assert not report.passed


def test_expected_table_covers_both_systems():
    systems = {system for system, _ in FIGURE_EXPECTED}
    assert systems == {System.TWO_DELTA, System.KINK_DELTA}
