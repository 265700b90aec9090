import json

import pytest
from click.testing import CliRunner

from limit_bundle.cli import main
from limit_bundle.utils.validation_utils import validate_report


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_passes_with_exit_zero(runner):
    result = runner.invoke(main, ["verify", "--suite", "group", "--dims", "2..4", "--trials", "5"])
    assert result.exit_code == 0, result.output
    assert "group.associativity" in result.output
    assert result.output.strip().splitlines()[-1].startswith("PASS")


def test_verify_json_report(runner):
    result = runner.invoke(
        main,
        ["verify", "--suite", "cocycle", "--dims", "2..5", "--trials", "5", "--seed", "42", "--format", "json"],
    )
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert validate_report(data)
    assert data["suite"] == "cocycle"
    assert data["pass"] is True
    assert data["config"]["seed"] == 42
    assert all(check["id"].startswith("cocycle.") for check in data["checks"])


def test_verify_writes_the_report_to_a_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(
        main, ["verify", "--suite", "tangency", "--dims", "2..3", "--trials", "3", "--format", "json", "--output", str(out)]
    )
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["suite"] == "tangency"


def test_verify_fault_exits_with_one(runner):
    result = runner.invoke(
        main, ["verify", "--suite", "diagram", "--dims", "2..5", "--trials", "10", "--fault", "drop-coordinate"]
    )
    assert result.exit_code == 1
    assert "FAIL" in result.output


@pytest.mark.parametrize("args", [
    ["--suite", "nope"],
    ["--tower", "torus"],
    ["--dims", "5..2"],
    ["--dims", "two"],
    ["--trials", "0"],
    ["--suite", "derivative", "--mode", "rational"],
    ["--fault", "bogus"],
])
def test_verify_config_errors_exit_with_two(runner, args):
    result = runner.invoke(main, ["verify", *args])
    assert result.exit_code == 2


def test_verify_cocycle_on_a_single_euclidean_level(runner):
    result = runner.invoke(
        main, ["verify", "--suite", "cocycle", "--tower", "euclidean", "--dims", "1..1", "--trials", "3"]
    )
    assert result.exit_code == 0, result.output


def test_list_suites(runner):
    result = runner.invoke(main, ["list-suites"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("group")
    assert any(line.startswith("derivative") and "[float]" in line for line in lines)


def test_guide(runner):
    result = runner.invoke(main, ["guide"])
    assert result.exit_code == 0
    assert "Fault Injection" in result.output
    assert "Report fields:" in result.output


@pytest.mark.parametrize("args, expected", [
    (["weak-inner", "1,2,3", "4,5"], "14"),
    (["include", "1,2", "4"], "(1, 2, 0, 0)"),
    (["apply", "0,-1;1,0", "1,0,7"], "(0, 1, 7)"),
    (["inverse", "2,0;0,1"], "[1/2]"),
    (["compose", "0,-1;1,0", "0,-1;1,0"], "[-1, 0]\n[0, -1]"),
    (["compose", "0,-1;1,0", "0,1;-1,0"], "identity"),
    (["u-plus", "1", "0,1"], "(0, 1)"),
    (["u-minus", "1", "3/5,4/5"], "(0, 1/2)"),
    (["u-plus-inv", "1", "0,2"], "(3/5, 4/5)"),
    (["transition", "0,2", "--source", "1", "--target", "1", "--target-sign", "-"], "(0, 1/2)"),
])
def test_sample_ops(runner, args, expected):
    result = runner.invoke(main, ["sample", *args])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == expected


def test_sample_float_mode(runner):
    result = runner.invoke(main, ["sample", "--mode", "float", "weak-inner", "0.5,2", "4"])
    assert result.exit_code == 0
    assert result.output.strip() == "2.0"


def test_sample_transition_fiber(runner):
    result = runner.invoke(main, ["sample", "transition-fiber", "0,0,1", "--source", "1", "--target", "0,1"])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "[0, 1]\n[1, 0]"


def test_sample_derivative_check(runner):
    result = runner.invoke(main, ["sample", "derivative-check", "1", "0,1", "1"])
    assert result.exit_code == 0, result.output
    assert "closed form : (0, 1)" in result.output


def test_sample_library_errors_exit_with_one(runner):
    result = runner.invoke(main, ["sample", "u-plus", "1", "1"])
    assert result.exit_code == 1
    assert "OutsideChartDomain" in result.output


def test_sample_bad_literal(runner):
    result = runner.invoke(main, ["sample", "weak-inner", "1,x", "2"])
    assert result.exit_code == 2
