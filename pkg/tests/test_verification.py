"""Registry mechanics for the invariant suite.

The individual invariants get exercised end to end by the CLI verify run in
the acceptance tests; here we only pin the registry's behavior.
"""

import math

import pytest

from driftspec.verification import CHECKS, CheckResult, check_names, run_checks


def test_registry_is_nonempty_and_named():
    names = check_names()
    assert len(names) >= 30
    assert len(set(names)) == len(names)
    prefixes = {n.split(".")[0] for n in names}
    assert prefixes == {"ode", "spectra", "series", "manifold"}


def test_run_selected_checks():
    results = run_checks(["series.exact_coefficients", "manifold.smoothing_partition"])
    assert [r.name for r in results] == ["series.exact_coefficients",
                                         "manifold.smoothing_partition"]
    assert all(r.passed for r in results)


def test_unknown_name_rejected():
    with pytest.raises(ValueError):
        run_checks(["no.such.check"])


def test_result_line_format():
    res = CheckResult("demo.check", False, 0.5, 0.25, "worst at x=1")
    line = res.line()
    assert line.startswith("FAIL  demo.check:")
    assert "worst at x=1" in line


def test_solver_failure_becomes_failed_result():
    from driftspec.ode_eigen import BracketEmpty

    def broken():
        raise BracketEmpty("forced failure")

    CHECKS["test.broken"] = broken
    try:
        (res,) = run_checks(["test.broken"])
        assert not res.passed
        assert math.isnan(res.measured)
        assert "forced failure" in res.detail
    finally:
        del CHECKS["test.broken"]
