"""Cross-check suite plumbing: report structure, suite routing,
tolerance override, and a live run of the fast suites."""
import math

import pytest

from susy_ces import verify
from susy_ces.errors import InvalidParams, NotConverged


def test_unknown_suite_rejected():
    with pytest.raises(InvalidParams):
        verify.run_suite("bogus")


def test_suite_names_and_sizes():
    assert set(verify.SUITES) == {"specfun", "closedform", "oracle", "scattering"}
    assert len(verify.SUITES["specfun"]) == 6
    assert len(verify.SUITES["closedform"]) == 8
    assert len(verify.SUITES["oracle"]) == 4
    assert len(verify.SUITES["scattering"]) == 2


def test_specfun_suite_passes():
    reports = verify.run_suite("specfun")
    assert len(reports) == 6
    assert [r.name for r in reports] == sorted(r.name for r in reports)
    for r in reports:
        assert r.passed, f"{r.name}: {r.max_error:.3e} > {r.tolerance:.1e}"
        assert r.max_error <= r.tolerance


def test_oracle_suite_passes():
    for r in verify.run_suite("oracle"):
        assert r.passed, f"{r.name}: {r.max_error:.3e} > {r.tolerance:.1e}"


def test_report_pass_is_exactly_the_threshold_comparison():
    rep = verify._report("demo", 2.0, 1.0, "x")
    assert not rep.passed
    rep = verify._report("demo", 1.0, 1.0, "x")
    assert rep.passed  # boundary counts as pass


def test_tolerance_override_fails_everything():
    reports = verify.run_suite("specfun", tol_override=1e-30)
    assert all(not r.passed for r in reports)
    assert all(r.tolerance == 1e-30 for r in reports)


def test_tolerance_override_loose_passes_everything():
    reports = verify.run_suite("specfun", tol_override=1e6)
    assert all(r.passed for r in reports)


def test_nonconvergence_maps_to_failed_report(monkeypatch):
    def check_always_diverges(tol: float = 1e-3):
        raise NotConverged("synthetic divergence")

    monkeypatch.setitem(verify.SUITES, "synthetic", (check_always_diverges,))
    reports = verify.run_suite("synthetic")
    assert len(reports) == 1
    assert not reports[0].passed
    assert math.isinf(reports[0].max_error)
    assert "synthetic divergence" in reports[0].details
