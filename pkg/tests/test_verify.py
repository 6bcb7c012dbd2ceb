import jsonschema
import pytest

from heisorbit import scalars as sc
from heisorbit.cli import report_schema
from heisorbit.verify import (
    SUITE_CHECKS,
    Check,
    Context,
    UnknownSuiteError,
    run_checks,
    run_suite,
)


def strip_time(report):
    return {k: v for k, v in report.items() if k != "wall_time"}


def test_group_suite_example():
    report = run_suite("group", n=3, seed=7)
    assert report["pass"] and report["mode"] == "exact"
    jsonschema.validate(report, report_schema())
    assert all(rec["tolerance"] == 0 for rec in report["checks"])
    assert all(rec["instances"] >= 1000 for rec in report["checks"])


def test_quantization_suite_example():
    report = run_suite("quantization", grid=(2048, 8.0))
    assert report["pass"]
    grid = next(r for r in report["checks"] if r["check"] == "commutator_grid")
    assert grid["max_defect"] <= 1e-6 and grid["instances"] == 20
    jsonschema.validate(report, report_schema())


def test_all_suite_aggregates_and_is_concurrency_safe():
    serial = run_suite("all", trials=10, seed=3)
    parallel = run_suite("all", trials=10, seed=3, workers=4)
    assert strip_time(serial) == strip_time(parallel)
    names = [(r["suite"], r["check"]) for r in serial["checks"]]
    assert len(names) == len(set(names))
    assert {s for s, _ in names} == {"group", "momentum", "cotype", "quantization"}
    assert serial["pass"] == all(r["pass"] for r in serial["checks"])
    jsonschema.validate(serial, report_schema())


def test_check_streams_do_not_depend_on_selection():
    ctx = Context(n=2, trials=40, seed=11)
    alone = run_checks([SUITE_CHECKS["cotype"][3]], ctx)
    within = run_checks(SUITE_CHECKS["cotype"], ctx)
    assert alone[0] == within[3]


def test_float_mode_suite():
    report = run_suite("group", n=2, trials=200, mode=sc.FLOAT, tol=1e-12)
    assert report["pass"] and all(r["tolerance"] == 1e-12 for r in report["checks"])


def test_failing_check_reports_counterexample():
    chk = Check("demo", "group", 0.0, sc.EXACT)
    a = sc.as_array([1, 2], sc.EXACT)
    chk.compare(a, a, x=1)
    chk.compare(a, sc.as_array([1, 3], sc.EXACT), x=2)
    rec = chk.record()
    assert not rec["pass"] and rec["max_defect"] == 1.0 and rec["instances"] == 2
    ce = rec["counterexample"]
    assert ce["inputs"] == {"x": 2} and ce["lhs"] == ["1", "2"] and ce["rhs"] == ["1", "3"]


def test_exact_tiny_difference_still_fails():
    chk = Check("demo", "group", 0.0, sc.EXACT)
    chk.compare(sc.as_array(["1/10000000000000000000000000000000000"], sc.EXACT), sc.as_array([0], sc.EXACT))
    assert not chk.record()["pass"]


def test_coarse_grid_fails_with_counterexample():
    report = run_suite("quantization", trials=2, grid=(16, 8.0))
    assert not report["pass"]
    failing = [r for r in report["checks"] if not r["pass"]]
    assert failing and all("counterexample" in r for r in failing)
    jsonschema.validate(report, report_schema())


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        run_suite("nope")


def test_context_validation():
    with pytest.raises(ValueError):
        Context(n=0)
    with pytest.raises(ValueError):
        Context(trials=0)
    with pytest.raises(ValueError):
        Context(mode="double")
