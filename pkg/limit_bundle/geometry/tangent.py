"""
Tangent bundle of a direct limit of manifolds.

A tangent vector [gamma, y] at level i is stored in the affine normal form
given by a chart family: the curve t -> h_i(ybar + t vbar) is represented by
the pair (ybar, vbar). On top of this representation the module provides the
tangent bonding maps Phi_ij, the chart lifts Th_i, the trivializations Psi_i,
the projection pi, the fiber transition functions T_xy with values in
GL(infinity, R), and the checks that tie them together.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import DEFAULT_TOL, FD_STEP
from ..errors import (
    AmbientTooSmall,
    EvaluationFailure,
    LevelDecrease,
    LimitBundleError,
    NotInPerp,
    NumericallySingular,
    OutsideChartDomain,
    Singular,
)
from ..utils.scalars import Scalar, ScalarMode, is_exact
from . import dirlim, finseq, glinf
from .finseq import FinVec, basis
from .glinf import GLInfElement
from .tower import ChartFamily, ManifoldTower, coordinate_transition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TangentRep:
    """Coordinates (ybar, vbar) of a tangent vector of M_level in ``family``."""

    tower: ManifoldTower = field(compare=False, repr=False)
    family: ChartFamily
    level: int
    base: FinVec
    vel: FinVec


@dataclass(frozen=True)
class IntrinsicTangent:
    """A tangent vector as a pair (x, v) of vectors of R^infinity."""

    point: FinVec
    vector: FinVec


def vec_close(x: FinVec, y: FinVec, tol: float = DEFAULT_TOL) -> bool:
    """Exact equality for rational vectors, max-norm tolerance otherwise."""
    if finseq.is_exact_vec(x) and finseq.is_exact_vec(y):
        return x == y
    return finseq.max_abs_diff(x, y) <= tol


def th(tower: ManifoldTower, family: ChartFamily, level: int, ybar: FinVec, vbar: FinVec) -> TangentRep:
    """
    Th_i: the tangent vector of t -> h_i(ybar + t vbar) at t = 0.

    Raises:
        IndexOutOfRange: If level is not in the tower.
        AmbientTooSmall: If ybar or vbar do not fit in R^{d_level}, or the
            family does not reach this level.
    """
    tower.check_level(level)
    d = tower.dim(level)
    if ybar.degree > d or vbar.degree > d:
        raise AmbientTooSmall(f"Coordinates of degree {max(ybar.degree, vbar.degree)} do not fit in R^{d}")
    if level < family.min_level:
        raise AmbientTooSmall(f"Chart family {family.key} starts at level {family.min_level}, got {level}")
    return TangentRep(tower, family, level, ybar, vbar)


def projection(rep: TangentRep) -> FinVec:
    """pi: the foot point h_i(ybar)."""
    return rep.family.inverse(rep.level, rep.base)


def ambient_velocity(rep: TangentRep) -> FinVec:
    """The velocity of the represented curve as a vector of R^infinity."""
    return rep.family.inverse_differential(rep.level, rep.base, rep.vel)


def phi_T(rep: TangentRep, j: int) -> TangentRep:
    """
    Phi_ij [gamma, y] = [phi_ij o gamma, phi_ij(y)], re-expressed in the
    level-j chart of the same family.

    Raises:
        LevelDecrease: If j < rep.level.
        IndexOutOfRange: If j is not in the tower.
    """
    i = rep.level
    if j < i:
        raise LevelDecrease(f"Cannot map a tangent vector from level {i} down to level {j}")
    tower = rep.tower
    tower.check_level(j)
    if j == i:
        return rep
    x = projection(rep)
    v = ambient_velocity(rep)
    x_j = tower.bond(i, j, x)
    v_j = tower.bond_differential(i, j, x, v)
    base = rep.family.forward(j, x_j)
    vel = rep.family.forward_differential(j, x_j, v_j)
    return TangentRep(tower, rep.family, j, base, vel)


def trivialize(rep: TangentRep, family: Optional[ChartFamily] = None) -> Tuple[FinVec, FinVec]:
    """
    Psi_i [gamma, y] = (y, (h_i^-1 o gamma)'(0)).

    Args:
        rep: The tangent vector.
        family: Chart family of the trivialization; defaults to the family the
            rep is written in, in which case the fiber is ``rep.vel``.

    Returns:
        (foot, fiber): the foot point and the fiber coordinates in R^{d_i}.

    Raises:
        OutsideChartDomain: If the foot is outside the trivialization's chart.
    """
    foot = projection(rep)
    if family is None or family == rep.family:
        return foot, rep.vel
    fiber = family.forward_differential(rep.level, foot, ambient_velocity(rep))
    return foot, fiber


def chart_change(rep: TangentRep, family: ChartFamily) -> TangentRep:
    """Th^(x') ^-1 o Th^(x): the same tangent vector written in another family."""
    if family == rep.family:
        return rep
    foot, fiber = trivialize(rep, family)
    return TangentRep(rep.tower, family, rep.level, family.forward(rep.level, foot), fiber)


def transition_fiber(
    tower: ManifoldTower,
    source: ChartFamily,
    target: ChartFamily,
    foot: FinVec,
    level: Optional[int] = None,
) -> GLInfElement:
    """
    T_xy at ``foot``: the linear map taking Psi_source fibers to Psi_target
    fibers, assembled column by column from the basis fibers e_1..e_d.

    Args:
        tower: The tower the charts belong to.
        source: Chart family of the first trivialization.
        target: Chart family of the second trivialization.
        foot: A point in both chart domains.
        level: Level at which the block is assembled; defaults to the top
            level of the tower. Fibers of tangent reps up to this level
            transform by the returned element.

    Raises:
        OutsideChartDomain: If the foot is outside one of the charts.
        NumericallySingular: If the assembled block is not invertible.
    """
    if level is None:
        level = tower.max_level
    if source == target:
        source.forward(level, foot)
        return glinf.identity()

    d = tower.dim(level)
    ybar = source.forward(level, foot)
    target.forward(level, foot)
    mode = ScalarMode.RATIONAL if finseq.is_exact_vec(foot) else ScalarMode.FLOAT
    columns = []
    for k in range(1, d + 1):
        w = source.inverse_differential(level, ybar, basis(k, mode))
        columns.append(target.forward_differential(level, foot, w))
    try:
        return glinf.from_columns(columns, d)
    except Singular as e:
        raise NumericallySingular(f"Fiber transition {source.key} -> {target.key} is singular at {foot!r}: {e}") from e


def fiber_jacobian(source: ChartFamily, target: ChartFamily, level: int, ybar: FinVec, d: int, dx: float = FD_STEP) -> np.ndarray:
    """
    Central-difference Jacobian of the coordinate transition
    target o source^-1 at ybar; column k is the derivative along e_k.
    """
    center = np.array(ybar.padded(d), dtype=float)
    jacobian = np.zeros((d, d))
    for k in range(d):
        params = center.copy()
        params[k] += dx
        up = coordinate_transition(source, target, level, finseq.from_sequence(params))
        params[k] -= 2.0 * dx
        down = coordinate_transition(source, target, level, finseq.from_sequence(params))
        jacobian[:, k] = (np.array(up.padded(d), dtype=float) - np.array(down.padded(d), dtype=float)) / (2.0 * dx)
    return jacobian


def directional_derivative(f: Callable[[FinVec], Any], x: FinVec, v: FinVec, h: float = FD_STEP) -> Union[FinVec, float]:
    """
    Central difference (f(x + h v) - f(x - h v)) / (2h) in float arithmetic.

    ``f`` may return a vector or a scalar; the estimate has the same kind.

    Raises:
        EvaluationFailure: If f fails at x +- h v.
    """
    xf = finseq.to_mode(x, ScalarMode.FLOAT)
    vf = finseq.to_mode(v, ScalarMode.FLOAT)
    try:
        up = f(xf + finseq.scale(h, vf))
        down = f(xf - finseq.scale(h, vf))
    except Exception as e:
        raise EvaluationFailure(f"Could not evaluate the map near {x!r}: {e}") from e
    if isinstance(up, FinVec):
        return finseq.scale(1.0 / (2.0 * h), up - down)
    return (float(up) - float(down)) / (2.0 * h)


def to_intrinsic(rep: TangentRep) -> IntrinsicTangent:
    """
    The pair (x, v) in R^infinity x R^infinity represented by rep.

    Raises:
        OutsideChartDomain: If the rep's base is outside its chart.
    """
    return IntrinsicTangent(projection(rep), ambient_velocity(rep))


def from_intrinsic(
    tower: ManifoldTower,
    tangent: IntrinsicTangent,
    family: Optional[ChartFamily] = None,
    level: Optional[int] = None,
    tol: float = DEFAULT_TOL,
) -> TangentRep:
    """
    Write an intrinsic tangent vector in a chart family.

    Args:
        tower: The tower.
        tangent: The pair (x, v).
        family: Chart family; defaults to ``tower.chart_family(x)``.
        level: Level of the result; defaults to the first level containing
            the tangent vector and the family.

    Raises:
        NotInPerp: If v is not tangent at x.
        OutsideChartDomain: If x is outside the chart.
    """
    x, v = tangent.point, tangent.vector
    if not tower.is_tangent(x, v, tol):
        raise NotInPerp(f"{v!r} is not tangent at {x!r}")
    if family is None:
        family = tower.chart_family(x)
    if level is None:
        level = max(tower.tangent_level(x, v), family.min_level)
    tower.check_level(level)
    return TangentRep(tower, family, level, family.forward(level, x), family.forward_differential(level, x, v))


def reps_equal(a: TangentRep, b: TangentRep, tol: float = DEFAULT_TOL) -> bool:
    """Same level and same tangent vector, comparing in a's chart family."""
    if a.level != b.level:
        return False
    if b.family != a.family:
        try:
            b = chart_change(b, a.family)
        except OutsideChartDomain:
            return False
    return vec_close(a.base, b.base, tol) and vec_close(a.vel, b.vel, tol)


def tangent_system(tower: ManifoldTower, tol: float = DEFAULT_TOL) -> dirlim.DirectedSystem:
    """{TM_i, Phi_ij} as a directed system with canonical lowest levels."""

    def lowest_level(level: int, rep: TangentRep) -> int:
        tangent = to_intrinsic(rep)
        return max(tower.tangent_level(tangent.point, tangent.vector), rep.family.min_level)

    def descend(level: int, rep: TangentRep, target: int) -> TangentRep:
        return from_intrinsic(tower, to_intrinsic(rep), rep.family, target, tol)

    return dirlim.DirectedSystem(
        name=f"T{tower.name}",
        objects={i: f"TM_{i}" for i in tower.levels},
        bond=lambda i, j, rep: phi_T(rep, j),
        injective=True,
        eq=lambda a, b: reps_equal(a, b, tol),
        lowest_level=lowest_level,
        descend=descend,
    )


# Checks


@dataclass
class ResidualReport:
    """Outcome of a two-path comparison over samples."""

    samples: int = 0
    failures: int = 0
    max_residual: Scalar = 0
    first_counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, residual: Scalar, tol: float, sample: Any) -> None:
        self.samples += 1
        if residual > self.max_residual or (is_exact(self.max_residual) and not is_exact(residual)):
            self.max_residual = residual
        failed = residual != 0 if is_exact(residual) else residual > tol
        if failed:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = {"sample": repr(sample), "residual": str(residual)}

    def record_error(self, error: Exception, sample: Any) -> None:
        self.samples += 1
        self.failures += 1
        if self.first_counterexample is None:
            self.first_counterexample = {"sample": repr(sample), "error": f"{type(error).__name__}: {error}"}


def diagram_check(
    tower: ManifoldTower,
    family: ChartFamily,
    i: int,
    j: int,
    samples: Sequence[Tuple[FinVec, FinVec]],
    tol: float = DEFAULT_TOL,
) -> ResidualReport:
    """
    Compare (phi_ij x lambda_ij) o Psi_i with Psi_j o Phi_ij on samples.

    Args:
        tower: The tower.
        family: Chart family of both trivializations.
        i: Source level.
        j: Target level, j >= i.
        samples: Chart coordinates (ybar, vbar) at level i.
        tol: Float tolerance; rational samples are compared exactly.

    Returns:
        ResidualReport: The largest residual over feet and fibers.
    """
    report = ResidualReport()
    for ybar, vbar in samples:
        try:
            rep = th(tower, family, i, ybar, vbar)
            foot, fiber = trivialize(rep)
            left = (tower.bond(i, j, foot), tower.coordinate_bond(i, j, fiber))
            right = trivialize(phi_T(rep, j))
        except LimitBundleError as e:
            report.record_error(e, (i, j, ybar, vbar))
            continue
        residual = max(finseq.max_abs_diff(left[0], right[0]), finseq.max_abs_diff(left[1], right[1]))
        report.record(residual, tol, (i, j, ybar, vbar))
    if not report.ok:
        logger.warning(f"Diagram check {i}->{j} on {tower.name}: {report.failures}/{report.samples} failures")
    return report


@dataclass
class RoundTripReport:
    lim_side: int = 0
    limit_side: int = 0
    failures: int = 0
    first_failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def fail(self, side: str, sample: Any, reason: str) -> None:
        self.failures += 1
        if self.first_failure is None:
            self.first_failure = {"side": side, "sample": repr(sample), "reason": reason}


def bundle_roundtrip(
    tower: ManifoldTower,
    reps: Sequence[TangentRep],
    tangents: Sequence[IntrinsicTangent],
    tol: float = DEFAULT_TOL,
    span: int = dirlim.COMPOSITION_SPAN,
) -> RoundTripReport:
    """
    Check on samples that lim TM_i and T(lim M_i) describe the same set.

    For each rep at level i, inject(i, rep) must be equivalent to the class of
    its pushforward at every level j in i..i+span. For each intrinsic tangent
    vector, its first level n must bound the support, the rep written at n must
    map back to the same pair (x, v), and the reps written at higher levels
    must define the same class of the limit.
    """
    system = tangent_system(tower, tol)
    report = RoundTripReport()

    for rep in reps:
        report.lim_side += 1
        element = dirlim.inject(system, rep.level, rep)
        for j in range(rep.level, min(rep.level + span, tower.max_level) + 1):
            pushed = dirlim.inject(system, j, phi_T(rep, j))
            if not dirlim.equivalent(element, pushed):
                report.fail("lim TM_i", rep, f"pushforward to level {j} is not equivalent")
                break

    for tangent in tangents:
        report.limit_side += 1
        x, v = tangent.point, tangent.vector
        try:
            n = tower.tangent_level(x, v)
            if max(x.degree, v.degree) > tower.ambient_dim(n):
                report.fail("T lim M_i", tangent, f"support exceeds level {n}")
                continue
            rep = from_intrinsic(tower, tangent, level=max(n, tower.chart_family(x).min_level), tol=tol)
            back = to_intrinsic(rep)
            if not (vec_close(back.point, x, tol) and vec_close(back.vector, v, tol)):
                report.fail("T lim M_i", tangent, "round trip changed the tangent vector")
                continue
            element = dirlim.inject(system, rep.level, rep)
            for m in range(rep.level + 1, min(rep.level + span, tower.max_level) + 1):
                higher = from_intrinsic(tower, tangent, rep.family, m, tol)
                if not dirlim.equivalent(element, dirlim.inject(system, m, higher)):
                    report.fail("T lim M_i", tangent, f"level {m} representative is not equivalent")
                    break
        except LimitBundleError as e:
            report.fail("T lim M_i", tangent, f"{type(e).__name__}: {e}")

    return report
