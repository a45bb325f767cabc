import json

import pytest
from click.testing import CliRunner

from app.main import cli, run


@pytest.fixture
def runner():
    return CliRunner()


def test_passing_suite_prints_a_summary_line(runner):
    result = runner.invoke(cli, ["verify", "miki", "--n", "1", "--window", "1"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("miki n=1 K=1 exact: PASS (")
    assert "instances" in result.stdout


def test_json_format(runner):
    result = runner.invoke(cli, ["verify", "theorem2", "--n", "1", "--window", "1", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["suite"] == "theorem2"
    assert payload["window"] == {"R": 1}
    assert payload["pass"] is True
    assert payload["failures"] == []
    assert payload["seed"] is None


def test_report_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", "dims", "--n", "2", "--window", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text())
    assert payload["suite"] == "dims"
    assert payload["n"] == 2


def test_failures_exit_with_one(runner):
    result = runner.invoke(
        cli, ["verify", "theorem1", "--n", "2", "--window", "1", "--mutation", "theta-untwisted"]
    )
    assert result.exit_code == 1
    assert "FAIL" in result.stdout
    assert "u5" in result.stdout


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "miki", "--window", "1"],
        ["verify", "miki", "--n", "0"],
        ["verify", "miki", "--n", "2", "--mode", "fast"],
        ["verify", "nonsense", "--n", "2"],
        ["verify", "miki", "--n", "2", "--mutation", "bkly-one-sided"],
        ["verify", "commutative", "--n", "2", "--specialize", "a1"],
        ["verify", "--n", "2"],
    ],
)
def test_usage_errors_exit_with_two(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_config_file_supplies_defaults(runner, tmp_path):
    config = tmp_path / "verify.json"
    out = tmp_path / "reports.json"
    config.write_text(json.dumps({"n": 1, "window": 0, "suites": ["miki", "dims"], "out": str(out)}))
    result = runner.invoke(cli, ["verify", "--config", str(config)])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0].startswith("miki n=1 K=0 exact: PASS")
    assert lines[1].startswith("dims n=1 K=0 exact: PASS")
    payload = json.loads(out.read_text())
    assert [report["suite"] for report in payload] == ["miki", "dims"]


def test_flags_override_the_config_file(runner, tmp_path):
    config = tmp_path / "verify.json"
    config.write_text(json.dumps({"n": 3, "window": 2}))
    result = runner.invoke(cli, ["verify", "miki", "--config", str(config), "--n", "1", "--window", "0"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("miki n=1 K=0 exact: PASS")


def test_invalid_config_file(runner, tmp_path):
    config = tmp_path / "verify.json"
    config.write_text(json.dumps({"n": 1, "suites": ["miki"], "colour": "red"}))
    assert runner.invoke(cli, ["verify", "--config", str(config)]).exit_code == 2
    config.write_text(json.dumps({"n": 1, "suites": ["unknown"]}))
    assert runner.invoke(cli, ["verify", "--config", str(config)]).exit_code == 2


def test_random_mode_reports_its_seed(runner):
    result = runner.invoke(
        cli,
        ["verify", "miki", "--n", "2", "--window", "1", "--mode", "random", "--seed", "5", "--points", "1",
         "--format", "json"],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["mode"] == "random"
    assert payload["seed"] == 5


def test_genericity_note_is_printed(runner):
    result = runner.invoke(cli, ["verify", "commutative", "--n", "2", "--window", "1", "--specialize", "a1=1"])
    assert result.exit_code == 0, result.output
    assert "note: genericity violation" in result.stdout


def test_run_returns_exit_codes():
    assert run(["verify", "miki", "--n", "1", "--window", "0"]) == 0
    assert run(["verify", "theorem1", "--n", "2", "--window", "1", "--mutation", "theta-untwisted"]) == 1
    assert run(["verify", "theorem2", "--n", "0"]) == 2


def test_rank_one_subalgebras_report_a_skip(runner):
    result = runner.invoke(cli, ["verify", "subalgebras", "--n", "1", "--window", "1"])
    assert result.exit_code == 0, result.output
    assert "note: vertical and horizontal subalgebra checks need n >= 2" in result.stdout
