from fractions import Fraction

import click
import pytest

from limit_bundle.config import DEFAULT_TRIALS, registry
from limit_bundle.errors import ConfigInvalid, UnknownSuite, UnknownTower
from limit_bundle.harness import CheckAccumulator, build_config, parse_cli, render_text, run_suite
from limit_bundle.utils.scalars import ScalarMode
from limit_bundle.utils.seeding import trial_rng
from limit_bundle.utils.validation_utils import validate_report


def records(report):
    return {check.id: check for check in report.checks}


def test_every_suite_is_registered():
    assert registry.names() == [
        "group", "functorial", "charts", "cocycle", "diagram", "tangency", "roundtrip", "derivative",
    ]
    assert registry.get("derivative").modes == ("float",)
    assert registry.get("cocycle").preferred_mode == "float"


def test_build_config_defaults():
    config = build_config()
    assert (config.suite, config.tower, config.dims, config.trials) == ("all", "sphere", "2..12", DEFAULT_TRIALS)
    assert config.mode is None


@pytest.mark.parametrize("params", [
    {"trials": 0},
    {"i_min": 5, "i_max": 2},
    {"tol": -1.0},
    {"seed": -1},
    {"fault": "bogus"},
    {"mode": "complex"},
])
def test_build_config_rejects_invalid_values(params):
    with pytest.raises(ConfigInvalid):
        build_config(**params)


def test_build_config_rejects_unknown_suites():
    with pytest.raises(UnknownSuite):
        build_config(suite="nope")


def test_unknown_tower():
    with pytest.raises(UnknownTower):
        run_suite(build_config(suite="group", tower="torus", trials=1))


def test_sphere_needs_two_levels():
    with pytest.raises(ConfigInvalid):
        run_suite(build_config(suite="group", i_min=1, i_max=1, trials=1))


def test_explicit_unsupported_mode_is_a_config_error():
    with pytest.raises(ConfigInvalid):
        run_suite(build_config(suite="derivative", mode="rational", trials=1))


def test_group_suite_passes_exactly():
    report = run_suite(build_config(suite="group", i_min=2, i_max=4, trials=8, seed=3))
    assert report.passed
    checks = records(report)
    assert "group.associativity" in checks
    assert all(check.trials == 8 for check in checks.values())
    assert all(check.max_residual is None for check in checks.values())


def test_float_cocycle_records_residuals():
    report = run_suite(build_config(suite="cocycle", i_min=2, i_max=5, trials=10, seed=11))
    assert report.passed
    assert records(report)["cocycle.cocycle"].max_residual is not None


def test_reports_are_deterministic():
    config = build_config(suite="diagram", i_min=2, i_max=5, trials=6, seed=5)
    first = run_suite(config).to_json_dict()
    second = run_suite(config).to_json_dict()
    first.pop("duration_ms")
    second.pop("duration_ms")
    assert first == second


def test_dropped_coordinate_fails_the_diagram():
    report = run_suite(build_config(suite="diagram", i_min=2, i_max=5, trials=10, fault="drop-coordinate"))
    assert not report.passed
    check = records(report)["diagram.diagram"]
    assert check.failures > 0
    assert check.counterexample is not None


def test_sign_flip_fails_chart_compatibility():
    report = run_suite(build_config(suite="charts", i_min=2, i_max=5, trials=5, fault="sign-flip"))
    assert not report.passed
    assert records(report)["charts.compatibility"].failures > 0


def test_sign_flip_fails_the_bundle_round_trip():
    report = run_suite(build_config(suite="roundtrip", i_min=2, i_max=6, trials=5, fault="sign-flip"))
    assert not report.passed
    check = records(report)["roundtrip.bijection"]
    assert check.failures > 0
    assert check.counterexample is not None
    validate_report(report.to_json_dict())


def test_cocycle_on_a_single_euclidean_level():
    report = run_suite(build_config(suite="cocycle", tower="euclidean", i_min=1, i_max=1, trials=5))
    assert report.passed, render_text(report)


def test_all_suites_on_a_short_run():
    report = run_suite(build_config(suite="all", i_min=2, i_max=3, trials=3, mode="rational"))
    assert report.passed, render_text(report)
    suites = {check.id.split(".")[0] for check in report.checks}
    assert suites == set(registry.names())
    validate_report(report.to_json_dict())


def test_euclidean_tower_passes():
    report = run_suite(build_config(suite="all", tower="euclidean", i_min=1, i_max=4, trials=3))
    assert report.passed, render_text(report)


def test_render_text_lists_every_check():
    report = run_suite(build_config(suite="tangency", i_min=2, i_max=4, trials=3))
    text = render_text(report)
    for check in report.checks:
        assert check.id in text
    assert text.splitlines()[-1].startswith("PASS")


def test_parse_cli():
    config = parse_cli(["verify", "--suite", "cocycle", "--dims", "2..12", "--trials", "500", "--seed", "42"])
    assert config.suite == "cocycle"
    assert (config.i_min, config.i_max) == (2, 12)
    assert config.trials == 500
    assert config.seed == 42

    config = parse_cli(["--mode", "float", "--tower", "euclidean", "--format", "json"])
    assert config.mode is ScalarMode.FLOAT
    assert config.tower == "euclidean"
    assert config.format == "json"


def test_parse_cli_errors():
    with pytest.raises(UnknownSuite):
        parse_cli(["--suite", "nope"])
    with pytest.raises(ConfigInvalid):
        parse_cli(["--dims", "5..2"])
    with pytest.raises(click.UsageError):
        parse_cli(["--bogus"])


def test_accumulator_exact_and_float_residuals():
    check = CheckAccumulator("demo", tol=1e-9)
    check.residual(Fraction(0), "a")
    check.residual(1e-12, "b")
    assert check.failures == 0
    assert check.max_residual == 1e-12
    check.residual(Fraction(1, 3), "c")
    check.residual(1e-3, "d")
    assert check.failures == 2
    assert check.counterexample["sample"] == repr("c")
    record = check.to_record("suite")
    assert record.id == "suite.demo"
    assert record.trials == 4


def test_accumulator_expect_and_errors():
    check = CheckAccumulator("demo", tol=1e-9)
    check.expect(True, 1)
    check.error(ValueError("boom"), 2)
    assert (check.trials, check.failures) == (2, 1)
    assert check.counterexample["error"] == "ValueError: boom"


def test_trial_generators_depend_only_on_seed_suite_and_trial():
    a = trial_rng(7, "cocycle", 3).integers(0, 2**32, size=4)
    b = trial_rng(7, "cocycle", 3).integers(0, 2**32, size=4)
    c = trial_rng(7, "diagram", 3).integers(0, 2**32, size=4)
    assert list(a) == list(b)
    assert list(a) != list(c)
