"""Runs property suites and assembles their reports."""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from .config import registry
from .errors import ConfigError, ConfigInvalid
from .geometry import tangent
from .geometry.tower import ChartFamily, ManifoldTower, get_tower
from .models import CheckRecord, SuiteConfig, SuiteReport
from .utils.registry import SuiteEntry
from .utils.scalars import Scalar, ScalarMode, is_exact
from .utils.seeding import trial_rng

# Register every suite on the shared registry
from . import suites  # noqa: F401

logger = logging.getLogger(__name__)


class CheckAccumulator:
    """
    Running totals of one check: trial count, failures, the largest float
    residual seen and the first counterexample. Only max and count reductions
    are used, so the totals do not depend on trial order.
    """

    def __init__(self, check_id: str, tol: float):
        self.id = check_id
        self.tol = tol
        self.trials = 0
        self.failures = 0
        self.max_residual: Optional[float] = None
        self.counterexample: Optional[Dict[str, Any]] = None

    def _fail(self, sample: Any, **details: Any) -> None:
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = {"sample": repr(sample), **details}
            logger.warning(f"Check '{self.id}' failed: {self.counterexample}")

    def residual(self, value: Scalar, sample: Any, tol: Optional[float] = None) -> None:
        """Record a residual: exact residuals must vanish, float ones must stay within tol."""
        self.trials += 1
        if is_exact(value):
            if value != 0:
                self._fail(sample, residual=str(value))
            return
        value = float(value)
        self.max_residual = value if self.max_residual is None else max(self.max_residual, value)
        if not value <= (self.tol if tol is None else tol):
            self._fail(sample, residual=repr(value))

    def expect(self, ok: bool, sample: Any, **details: Any) -> None:
        self.trials += 1
        if not ok:
            self._fail(sample, **details)

    def error(self, error: Exception, sample: Any) -> None:
        self.trials += 1
        self._fail(sample, error=f"{type(error).__name__}: {error}")

    def merge(self, report: "tangent.ResidualReport") -> None:
        """Fold a two-path residual report into this check."""
        self.trials += report.samples
        self.failures += report.failures
        if not is_exact(report.max_residual):
            value = float(report.max_residual)
            self.max_residual = value if self.max_residual is None else max(self.max_residual, value)
        if self.counterexample is None and report.first_counterexample is not None:
            self.counterexample = dict(report.first_counterexample)

    def to_record(self, prefix: str) -> CheckRecord:
        return CheckRecord(
            id=f"{prefix}.{self.id}",
            trials=self.trials,
            failures=self.failures,
            max_residual=self.max_residual,
            counterexample=self.counterexample,
        )


@dataclass
class SuiteContext:
    """Everything a suite function needs: config, tower, mode and its checks."""

    config: SuiteConfig
    tower: ManifoldTower
    mode: ScalarMode
    suite: str
    checks: Dict[str, CheckAccumulator] = field(default_factory=dict)

    @property
    def tol(self) -> float:
        return self.config.tol

    @property
    def exact(self) -> bool:
        return self.mode is ScalarMode.RATIONAL

    def check(self, check_id: str) -> CheckAccumulator:
        if check_id not in self.checks:
            self.checks[check_id] = CheckAccumulator(check_id, self.config.tol)
        return self.checks[check_id]

    def trials(self) -> Iterator[Tuple[int, np.random.Generator]]:
        for k in range(self.config.trials):
            yield k, trial_rng(self.config.seed, self.suite, k)

    def level(self, rng: np.random.Generator, lowest: int = 1) -> int:
        """A random level in the configured range, at least ``lowest`` when possible."""
        low = min(max(self.config.i_min, lowest), self.config.i_max)
        return int(rng.integers(low, self.config.i_max + 1))

    def level_pair(self, rng: np.random.Generator, lowest: int = 1) -> Tuple[int, int]:
        """Levels i <= j, with i < j whenever the range allows it."""
        low = min(max(self.config.i_min, lowest), self.config.i_max)
        if low == self.config.i_max:
            return low, low
        i = int(rng.integers(low, self.config.i_max))
        j = int(rng.integers(i + 1, self.config.i_max + 1))
        return i, j

    def family(self, rng: np.random.Generator, level: int) -> ChartFamily:
        """A random atlas family that reaches ``level``."""
        atlas = [family for family in self.tower.atlas() if family.min_level <= level]
        return atlas[int(rng.integers(len(atlas)))]

    def to_mode(self, value: Any) -> Scalar:
        return self.mode.coerce(value)


def _resolve_mode(entry: SuiteEntry, config: SuiteConfig, explicit: bool) -> ScalarMode:
    if config.mode is None:
        return ScalarMode(entry.preferred_mode)
    if config.mode.value in entry.modes:
        return config.mode
    if explicit:
        raise ConfigInvalid(
            f"Suite '{entry.name}' does not support mode '{config.mode.value}' (supported: {', '.join(entry.modes)})"
        )
    logger.info(f"Suite '{entry.name}' runs in {entry.preferred_mode} mode instead of {config.mode.value}")
    return ScalarMode(entry.preferred_mode)


def _build_tower(config: SuiteConfig) -> ManifoldTower:
    try:
        return get_tower(config.tower, config.i_max, config.fault)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigInvalid(str(e)) from e


def run_suite(config: SuiteConfig) -> SuiteReport:
    """
    Run one suite (or all of them) and collect a report.

    Args:
        config: Validated suite configuration.

    Returns:
        SuiteReport: Deterministic for a fixed config, apart from ``duration_ms``.

    Raises:
        UnknownSuite: If the suite is not registered.
        UnknownTower: If the tower is not registered.
        ConfigInvalid: If the config is inconsistent with the suite or tower.
    """
    start = time.perf_counter()
    explicit = config.suite != "all"
    entries = [registry.get(config.suite)] if explicit else registry.entries()
    tower = _build_tower(config)

    records: List[CheckRecord] = []
    for entry in entries:
        mode = _resolve_mode(entry, config, explicit)
        context = SuiteContext(config=config, tower=tower, mode=mode, suite=entry.name)
        logger.info(f"Running suite '{entry.name}' on tower '{tower.name}' ({config.trials} trials, {mode.value} mode)")
        entry.func(context)
        suite_records = [check.to_record(entry.name) for check in context.checks.values()]
        failures = sum(record.failures for record in suite_records)
        logger.info(f"Suite '{entry.name}' finished with {failures} failures")
        records.extend(suite_records)

    return SuiteReport(
        suite=config.suite,
        config=config,
        checks=records,
        passed=all(record.failures == 0 for record in records),
        duration_ms=(time.perf_counter() - start) * 1000.0,
    )


def build_config(**params: Any) -> SuiteConfig:
    """
    Validate raw parameters into a SuiteConfig.

    Raises:
        UnknownSuite: If the suite name is not registered.
        ConfigInvalid: If pydantic rejects the parameters.
    """
    try:
        config = SuiteConfig(**params)
    except ValidationError as e:
        raise ConfigInvalid(f"Invalid configuration: {e}") from e
    if config.suite != "all":
        registry.get(config.suite)
    return config


def parse_cli(argv: Sequence[str]) -> SuiteConfig:
    """
    Parse ``verify`` arguments into a SuiteConfig.

    Args:
        argv: Arguments, optionally starting with the word ``verify``.

    Raises:
        click.UsageError: On unknown flags or malformed values.
        UnknownSuite: If ``--suite`` names no registered suite.
    """
    from .cli import config_from_params, verify

    args = list(argv)
    if args and args[0] == "verify":
        args = args[1:]
    with verify.make_context("verify", args) as ctx:
        return config_from_params(ctx.params)


def render_text(report: SuiteReport) -> str:
    """Human-readable rendering of a report."""
    config = report.config
    lines = [
        f"suite {report.suite} | tower {config.tower} | dims {config.dims} | trials {config.trials} "
        f"| seed {config.seed} | mode {config.mode.value if config.mode else 'auto'} | fault {config.fault}",
    ]
    width = max((len(check.id) for check in report.checks), default=10)
    for check in report.checks:
        status = "ok" if check.failures == 0 else "FAIL"
        residual = "exact" if check.max_residual is None else f"{check.max_residual:.3e}"
        lines.append(f"  {check.id:<{width}}  {status:<4}  {check.failures:>5}/{check.trials:<6} residual {residual}")
        if check.counterexample:
            lines.append(f"      first counterexample: {check.counterexample}")
    lines.append(f"{'PASS' if report.passed else 'FAIL'} ({report.failures} failures, {report.duration_ms:.0f} ms)")
    return "\n".join(lines)
