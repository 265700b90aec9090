"""Command-line entry point for limit-bundle."""

import json
import logging
import os
from typing import Any, Dict, Tuple

import click

from .config import DEFAULT_DIMS, DEFAULT_SEED, DEFAULT_TOL, DEFAULT_TRIALS, registry
from .errors import ConfigError, LimitBundleError
from .geometry import finseq, glinf, tangent
from .geometry.tower import (
    FaultInjectedTower,
    Sign,
    SpherePoint,
    StereoChart,
    StereoChartFamily,
    TOWERS,
    sphere_tower,
    stereo_differential,
    stereo_project,
    transition,
    u_minus,
    u_plus,
    u_plus_inv,
)
from .harness import build_config, render_text, run_suite
from .models import SuiteConfig
from .utils.literals import format_matrix, format_scalar, format_vector, parse_matrix, parse_vector
from .utils.scalars import ScalarMode
from .utils.validation_utils import get_schema_summary, validate_report

logger = logging.getLogger(__name__)

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']


def _configure_logging(log_level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def log_level_option(func):
    return click.option(
        '--log-level',
        type=click.Choice(LOG_LEVELS, case_sensitive=False),
        default='WARNING',
        help='Logging level, written to stderr (default: WARNING)'
    )(func)


class DimsRange(click.ParamType):
    """A level range written "i_min..i_max" (or a single level)."""

    name = 'dims'

    def convert(self, value: Any, param, ctx) -> Tuple[int, int]:
        if isinstance(value, tuple):
            return value
        text = str(value).strip()
        low, sep, high = text.partition('..')
        try:
            i_min = int(low)
            i_max = int(high) if sep else i_min
        except ValueError:
            self.fail(f"'{value}' is not a range like 2..12", param, ctx)
        return i_min, i_max


def config_from_params(params: Dict[str, Any]) -> SuiteConfig:
    """
    Turn parsed ``verify`` options into a validated SuiteConfig.

    Raises:
        UnknownSuite: If the suite is not registered.
        ConfigInvalid: If the values violate the config invariants.
    """
    i_min, i_max = params['dims']
    return build_config(
        suite=params['suite'],
        tower=params['tower'],
        i_min=i_min,
        i_max=i_max,
        trials=params['trials'],
        seed=params['seed'],
        tol=params['tol'],
        mode=params['mode'],
        format=params['output_format'],
        fault=params['fault'],
    )


@click.group()
def main():
    """Property checks for direct limits of manifolds and their tangent bundles."""


@main.command()
@click.option('--suite', default='all', help='Suite to run, or "all" (default: all)')
@click.option('--tower', default='sphere', help=f"Tower to check: {', '.join(TOWERS)} (default: sphere)")
@click.option(
    '--dims',
    type=DimsRange(),
    default=f'{DEFAULT_DIMS[0]}..{DEFAULT_DIMS[1]}',
    help='Level range i_min..i_max (default: 2..12)'
)
@click.option('--trials', type=int, default=DEFAULT_TRIALS, help=f'Trials per suite (default: {DEFAULT_TRIALS})')
@click.option('--seed', type=int, default=DEFAULT_SEED, help='Master seed, 0 <= seed < 2^64 (default: 0)')
@click.option('--tol', type=float, default=DEFAULT_TOL, help=f'Float tolerance (default: {DEFAULT_TOL})')
@click.option(
    '--mode',
    type=click.Choice([mode.value for mode in ScalarMode], case_sensitive=False),
    default=None,
    help='Scalar mode (default: each suite\'s preferred mode, rational where supported)'
)
@click.option(
    '--format', 'output_format',
    type=click.Choice(['text', 'json'], case_sensitive=False),
    default='text',
    help='Report format (default: text)'
)
@click.option(
    '--fault',
    type=click.Choice(['none', *FaultInjectedTower.FAULTS], case_sensitive=False),
    default='none',
    help='Corrupt the tower to check that suites detect it (default: none)'
)
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None, help='Write the report to a file')
@log_level_option
@click.pass_context
def verify(ctx, suite, tower, dims, trials, seed, tol, mode, output_format, fault, output, log_level):
    """Run property suites; exit 0 on pass, 1 on check failures, 2 on configuration errors."""
    _configure_logging(log_level)

    try:
        config = config_from_params(ctx.params)
        report = run_suite(config)
    except ConfigError as e:
        raise click.UsageError(str(e), ctx=ctx) from e

    if config.format == 'json':
        data = report.to_json_dict()
        validate_report(data)
        text = json.dumps(data, indent=2)
    else:
        text = render_text(report)

    if output:
        with open(output, 'w') as file:
            file.write(text + '\n')
        logger.info(f"Report written to {output}")
    else:
        click.echo(text)
    ctx.exit(0 if report.passed else 1)


@main.command('list-suites')
def list_suites():
    """List the registered suites with their scalar modes."""
    for entry in registry.entries():
        click.echo(f"{entry.name:<12} [{', '.join(entry.modes)}]  {entry.description}")


def _get_suites_guide_content() -> str:
    """
    Internal function to read the suites guide shipped with the package.

    Returns:
        The content of the suites guide
    """
    try:
        current_dir = os.path.dirname(os.path.abspath(__file__))
        guide_path = os.path.join(current_dir, 'docs', 'suites_guide.md')
        with open(guide_path, 'r') as file:
            return file.read()
    except OSError as e:
        return f"Error reading the suites guide: {str(e)}."


@main.command()
def guide():
    """Print the guide to the suites, their checks and the report format."""
    click.echo(_get_suites_guide_content())
    click.echo(get_schema_summary())


# One-off evaluations


def _vector(text: str, mode: ScalarMode, name: str) -> finseq.FinVec:
    try:
        return parse_vector(text, mode)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint=name)


def _element(text: str, mode: ScalarMode, name: str) -> glinf.GLInfElement:
    try:
        return glinf.from_block(parse_matrix(text, mode))
    except LimitBundleError:
        raise
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint=name)


def _chart(pole: str, sign: str, mode: ScalarMode) -> StereoChart:
    return StereoChart(SpherePoint(_vector(pole, mode, 'pole')), Sign.PLUS if sign == '+' else Sign.MINUS)


class SampleGroup(click.Group):
    """Reports library errors of a sample op as a one-line failure."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except LimitBundleError as e:
            raise click.ClickException(f"{type(e).__name__}: {e}") from e


SIGN = click.Choice(['+', '-'])


@main.group(cls=SampleGroup)
@click.option(
    '--mode',
    type=click.Choice([mode.value for mode in ScalarMode], case_sensitive=False),
    default='rational',
    help='Scalar mode of the literals (default: rational)'
)
@log_level_option
@click.pass_context
def sample(ctx, mode, log_level):
    """Evaluate one operation on literals such as 1,-2/3,0.5 (matrices: rows separated by ';')."""
    _configure_logging(log_level)
    ctx.obj = ScalarMode(mode.lower())


@sample.command('weak-inner')
@click.argument('x')
@click.argument('y')
@click.pass_obj
def sample_weak_inner(mode, x, y):
    """<x, y> on R^infinity."""
    click.echo(format_scalar(finseq.weak_inner(_vector(x, mode, 'x'), _vector(y, mode, 'y'))))


@sample.command('include')
@click.argument('x')
@click.argument('d', type=int)
@click.pass_obj
def sample_include(mode, x, d):
    """The zero-padding inclusion of x into R^d."""
    v = finseq.include(_vector(x, mode, 'x'), d)
    click.echo(format_vector(v.padded(d)))


@sample.command('compose')
@click.argument('g')
@click.argument('h')
@click.pass_obj
def sample_compose(mode, g, h):
    """The product g o h in GL(infinity, R)."""
    click.echo(format_matrix(glinf.compose(_element(g, mode, 'g'), _element(h, mode, 'h')).block))


@sample.command('inverse')
@click.argument('g')
@click.pass_obj
def sample_inverse(mode, g):
    """The inverse of g in GL(infinity, R)."""
    click.echo(format_matrix(glinf.inverse(_element(g, mode, 'g')).block))


@sample.command('apply')
@click.argument('g')
@click.argument('v')
@click.pass_obj
def sample_apply(mode, g, v):
    """The action of g on a vector of R^infinity."""
    click.echo(format_vector(glinf.apply(_element(g, mode, 'g'), _vector(v, mode, 'v'))))


@sample.command('u-plus')
@click.argument('pole')
@click.argument('x')
@click.pass_obj
def sample_u_plus(mode, pole, x):
    """u_+(x) for the chart with the given pole."""
    click.echo(format_vector(u_plus(_chart(pole, '+', mode), SpherePoint(_vector(x, mode, 'x')))))


@sample.command('u-minus')
@click.argument('pole')
@click.argument('x')
@click.pass_obj
def sample_u_minus(mode, pole, x):
    """u_-(x) for the chart with the given pole."""
    click.echo(format_vector(u_minus(_chart(pole, '+', mode), SpherePoint(_vector(x, mode, 'x')))))


@sample.command('u-plus-inv')
@click.argument('pole')
@click.argument('y')
@click.pass_obj
def sample_u_plus_inv(mode, pole, y):
    """u_+^-1(y) for y orthogonal to the pole."""
    click.echo(format_vector(u_plus_inv(_chart(pole, '+', mode), _vector(y, mode, 'y')).coords))


@sample.command('transition')
@click.argument('y')
@click.option('--source', 'source_pole', required=True, help='Pole of the source chart')
@click.option('--source-sign', type=SIGN, default='+', help='Sign of the source chart (default: +)')
@click.option('--target', 'target_pole', required=True, help='Pole of the target chart')
@click.option('--target-sign', type=SIGN, default='+', help='Sign of the target chart (default: +)')
@click.pass_obj
def sample_transition(mode, y, source_pole, source_sign, target_pole, target_sign):
    """The chart change u_target o u_source^-1 at y (ambient coordinates)."""
    source = _chart(source_pole, source_sign, mode)
    target = _chart(target_pole, target_sign, mode)
    click.echo(format_vector(transition(source, target, _vector(y, mode, 'y'))))


@sample.command('transition-fiber')
@click.argument('foot')
@click.option('--source', 'source_pole', required=True, help='Pole of the source chart')
@click.option('--source-sign', type=SIGN, default='+', help='Sign of the source chart (default: +)')
@click.option('--target', 'target_pole', required=True, help='Pole of the target chart')
@click.option('--target-sign', type=SIGN, default='+', help='Sign of the target chart (default: +)')
@click.option('--level', type=int, default=None, help='Level of the block (default: first level containing everything)')
@click.pass_obj
def sample_transition_fiber(mode, foot, source_pole, source_sign, target_pole, target_sign, level):
    """The fiber transition T_xy at a foot point of the sphere tower."""
    x = _vector(foot, mode, 'foot')
    SpherePoint(x)
    source = StereoChartFamily(_chart(source_pole, source_sign, mode))
    target = StereoChartFamily(_chart(target_pole, target_sign, mode))
    if level is None:
        level = max(1, x.degree - 1, source.min_level, target.min_level)
    top = max(2, level)
    click.echo(format_matrix(tangent.transition_fiber(sphere_tower(top), source, target, x, level).block))


@sample.command('derivative-check')
@click.argument('pole')
@click.argument('x')
@click.argument('v')
@click.option('--sign', type=SIGN, default='+', help='Chart sign (default: +)')
@click.pass_obj
def sample_derivative_check(mode, pole, x, v, sign):
    """Closed-form du(x)v next to its central finite difference."""
    chart = _chart(pole, sign, mode)
    a, sigma = chart.pole.coords, int(chart.sign)
    point, direction = _vector(x, mode, 'x'), _vector(v, mode, 'v')
    analytic = stereo_differential(a, sigma, point, direction)
    numeric = tangent.directional_derivative(lambda z: stereo_project(a, sigma, z), point, direction)
    error = float(finseq.max_abs_diff(finseq.to_mode(analytic, ScalarMode.FLOAT), numeric))
    click.echo(f"closed form : {format_vector(analytic)}")
    click.echo(f"difference  : {format_vector(numeric)}")
    click.echo(f"max error   : {error:.3e}")


if __name__ == '__main__':
    main()
