import json

import pytest
from pydantic import ValidationError

from app.config import settings
from app.core.presentations import y_relations
from app.core.scalars import SYMBOLIC
from app.schemas import FailureRecord, ParamAssignment, Report, SuiteConfig
from app.suites import SUITES, verify_dims, verify_miki, verify_theorem2
from app.suites.runner import SuiteContext, UnknownMutation, params_key


def run(name, **kwargs):
    return SUITES[name].run(SuiteConfig(**kwargs))


# =========================================================
# SCHEMAS
# =========================================================
def test_suite_config_normalizes_seed():
    assert SuiteConfig(n=2, seed=5).seed is None
    assert SuiteConfig(n=2, mode="random").seed == 0
    assert SuiteConfig(n=2, mode="random", seed=9).seed == 9


def test_suite_config_rejects_bad_values():
    with pytest.raises(ValidationError):
        SuiteConfig(n=0)
    with pytest.raises(ValidationError):
        SuiteConfig(n=2, window=-1)
    with pytest.raises(ValidationError):
        SuiteConfig(n=2, mode="fast")
    with pytest.raises(ValidationError):
        SuiteConfig(n=2, colour="red")


def test_param_assignment_avoids_degenerate_points():
    with pytest.raises(ValidationError):
        ParamAssignment(d=1, beta=2)
    with pytest.raises(ValidationError):
        ParamAssignment(d=-1, beta=2)
    with pytest.raises(ValidationError):
        ParamAssignment(d=2, beta=0)
    assert ParamAssignment(d="3/2", beta=1, a=[2]).as_dict()["a1"] == 2


def test_report_pass_flag_must_match_failures():
    failure = FailureRecord(family="u1", params={"i": 0}, residual="E[1,1]")
    with pytest.raises(ValidationError):
        Report(suite="miki", n=1, window={"K": 1}, mode="exact", instances=1,
               failures=[failure], elapsed_ms=0, passed=True)
    report = Report(suite="miki", n=1, window={"K": 1}, mode="exact", instances=1, elapsed_ms=0, passed=True)
    payload = json.loads(report.to_json())
    assert payload["pass"] is True
    assert "passed" not in payload
    assert "diagnostics" not in payload


def test_params_key_orders_ints_before_strings():
    assert params_key({"b": "x", "a": 2}) < params_key({"b": "y", "a": 2})
    assert params_key({"a": 1}) < params_key({"a": "0"})


# =========================================================
# SUITES
# =========================================================
@pytest.mark.parametrize(
    "name,n,window",
    [
        ("theorem1", 1, 1),
        ("theorem1", 2, 1),
        ("theorem2", 1, 1),
        ("theorem2", 2, 1),
        ("miki", 2, 1),
        ("subalgebras", 2, 1),
        ("subalgebras", 3, 1),
        ("commutative", 2, 1),
        ("commutative", 3, 1),
        ("dims", 2, 1),
        ("structure", 2, 1),
    ],
)
def test_suites_pass_in_exact_mode(name, n, window):
    report = run(name, n=n, window=window)
    assert report.failures == []
    assert report.passed
    assert report.instances > 0
    assert report.suite == name
    assert report.seed is None


@pytest.mark.parametrize("name", ["theorem1", "theorem2", "miki", "structure", "dims"])
def test_suites_pass_in_random_mode(name):
    report = run(name, n=2, window=1, mode="random", seed=11, points=1)
    assert report.passed, report.failures
    assert report.seed == 11


def test_structure_suite_in_exact_mode_for_rank_one():
    report = run("structure", n=1, window=1)
    assert report.passed, report.failures


def test_window_key_follows_the_side():
    assert run("theorem2", n=1, window=0).window == {"R": 0}
    assert run("miki", n=1, window=0).window == {"K": 0}


def test_random_mode_is_deterministic():
    first = run("theorem1", n=2, window=1, mode="random", seed=3, points=2)
    second = run("theorem1", n=2, window=1, mode="random", seed=3, points=2)
    assert first.instances == second.instances
    assert first.failures == second.failures


def test_jobs_do_not_change_the_outcome():
    serial = run("miki", n=2, window=1)
    pooled = run("miki", n=2, window=1, jobs=4)
    assert serial.instances == pooled.instances
    assert serial.passed and pooled.passed


@pytest.mark.parametrize(
    "name,extra",
    [
        ("theorem1", dict(mutation="theta-untwisted")),
        ("structure", dict(mode="random", seed=1, points=1, mutation="cocycle1-untwisted")),
    ],
)
def test_jobs_keep_failure_lists_byte_identical(name, extra):
    serial = run(name, n=2, window=1, **extra)
    pooled = run(name, n=2, window=1, jobs=8, **extra)
    assert not serial.passed
    assert json.loads(serial.to_json())["failures"] == json.loads(pooled.to_json())["failures"]
    assert serial.model_dump_json(include={"failures"}) == pooled.model_dump_json(include={"failures"})


# =========================================================
# MUTATIONS
# =========================================================
def test_untwisted_theta_is_detected():
    report = run("theorem1", n=2, window=1, mutation="theta-untwisted")
    assert not report.passed
    assert "u5" in {f.family for f in report.failures}


def test_untwisted_first_cocycle_is_detected():
    report = run("structure", n=2, window=1, mode="random", seed=1, points=1, mutation="cocycle1-untwisted")
    assert not report.passed
    assert "jacobi-difference" in {f.family for f in report.failures}


def test_one_sided_bkly_cocycle_is_detected():
    report = run("structure", n=2, window=1, mode="random", seed=1, points=1, mutation="bkly-one-sided")
    assert not report.passed
    assert "antisymmetry-differential" in {f.family for f in report.failures}


def test_unknown_mutation_is_rejected():
    with pytest.raises(UnknownMutation):
        run("miki", n=2, window=1, mutation="theta-untwisted")


def test_failures_are_sorted_and_capped(monkeypatch):
    monkeypatch.setattr(settings, "VERIFY_MAX_FAILURES", 1)
    report = run("theorem1", n=2, window=1, mutation="theta-untwisted")
    families = [f.family for f in report.failures]
    assert len(families) == len(set(families))
    assert families == sorted(families)
    assert any("further failures omitted" in note for note in report.diagnostics)


def test_coinciding_parameters_are_diagnosed_not_failed():
    report = run("commutative", n=2, window=1, specialize={"a1": 1})
    assert "vandermonde" not in {f.family for f in report.failures}
    assert any("genericity" in note for note in report.diagnostics)


def test_verify_entry_points_match_the_registry():
    cfg = SuiteConfig(n=1, window=0)
    assert verify_miki(cfg).instances == SUITES["miki"].run(cfg).instances
    assert verify_theorem2(cfg).window == {"R": 0}
    assert verify_dims(SuiteConfig(n=2, window=1)).passed


def test_subalgebra_membership_is_skipped_for_rank_one():
    report = run("subalgebras", n=1, window=2)
    assert report.passed, report.failures
    assert report.instances > 0
    assert any("n >= 2" in note for note in report.diagnostics)


def test_theorem2_checks_beta_rescaling_up_to_three():
    ctx = SuiteContext(SuiteConfig(n=1, window=5), SYMBOLIC)
    checks = [c for c in SUITES["theorem2"].build(ctx) if c.family == "rescaling"]
    assert len(checks) == len(y_relations(1, 3))
    assert all(check.run() is None for check in checks)
