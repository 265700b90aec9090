"""
Directed towers of manifolds with compatible chart families.

The main tower is the sphere tower S^1 c S^2 c ... c S^infinity inside
R^infinity, with the stereographic atlas. The level-i manifold S^i lives in the
first i + 1 coordinates; a chart family sends R^i onto S^i minus one point and
satisfies h_j o lambda_ij = phi_ij o h_i for every pair of levels it covers.

Two layers are exposed:

* ambient formulas (``u_plus``, ``u_plus_inv``, ``transition``...) acting on
  vectors of R^infinity and the hyperplane {a}^perp, exactly as written for a
  pole a;
* coordinate chart families (``StereoChartFamily``, ``TranslationChartFamily``)
  with values in R^{d_i}, which is what the tangent machinery consumes.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from ..config import DEFAULT_TOL, DOMAIN_GUARD
from ..errors import AmbientTooSmall, IndexOutOfRange, NotInPerp, NotOnSphere, OutsideChartDomain, UnknownTower
from ..utils.scalars import Scalar, ScalarMode, is_exact, is_zero, random_scalar
from . import finseq
from .finseq import FinVec, add, basis, norm_sq, scale, shift, unshift, weak_inner

logger = logging.getLogger(__name__)


class Sign(IntEnum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class SpherePoint:
    coords: FinVec

    def __post_init__(self):
        if not is_zero(norm_sq(self.coords) - 1, DEFAULT_TOL):
            raise NotOnSphere(f"{self.coords!r} does not have unit weak norm")


@dataclass(frozen=True)
class StereoChart:
    """
    One chart of the stereographic atlas with pole ``a``: sign + is defined on
    S minus {a}, sign - on S minus {-a}. Both take values in {a}^perp.
    """

    pole: SpherePoint
    sign: Sign = Sign.PLUS

    @property
    def excluded_point(self) -> FinVec:
        return scale(int(self.sign), self.pole.coords)

    def __str__(self) -> str:
        return f"({', '.join(str(c) for c in self.pole.coords)}){'+' if self.sign is Sign.PLUS else '-'}"


def _guard_nonzero(value: Scalar, message: str) -> None:
    if is_zero(value, DOMAIN_GUARD):
        raise OutsideChartDomain(message)


def stereo_project(a: FinVec, sigma: int, x: FinVec) -> FinVec:
    """(x - <x,a> a) / (1 - sigma <x,a>), defined on all of R^infinity off the hyperplane."""
    t = weak_inner(x, a)
    denominator = 1 - sigma * t
    _guard_nonzero(denominator, f"{x!r} is the excluded point of the chart with pole {a!r}, sign {sigma:+d}")
    return (x - scale(t, a)) / denominator


def stereo_lift(a: FinVec, sigma: int, y: FinVec) -> FinVec:
    """(2y + sigma (<y,y> - 1) a) / (<y,y> + 1)."""
    s = norm_sq(y)
    return add(scale(2, y), scale(sigma * (s - 1), a)) / (s + 1)


def stereo_differential(a: FinVec, sigma: int, x: FinVec, v: FinVec) -> FinVec:
    """
    Derivative of ``stereo_project`` at x in the direction v:
    P v / D + sigma <v,a> P x / D^2 with P the projection onto {a}^perp and
    D = 1 - sigma <x,a>.
    """
    t = weak_inner(x, a)
    denominator = 1 - sigma * t
    _guard_nonzero(denominator, f"{x!r} is the excluded point of the chart with pole {a!r}, sign {sigma:+d}")
    va = weak_inner(v, a)
    projected_v = v - scale(va, a)
    projected_x = x - scale(t, a)
    return add(projected_v / denominator, scale(sigma * va, projected_x) / (denominator * denominator))


def stereo_lift_differential(a: FinVec, sigma: int, y: FinVec, w: FinVec) -> FinVec:
    """Derivative of ``stereo_lift`` at y: 2w/(s+1) + 4<y,w>(sigma a - y)/(s+1)^2."""
    s1 = norm_sq(y) + 1
    yw = weak_inner(y, w)
    return add(scale(2, w) / s1, scale(4 * yw, scale(sigma, a) - y) / (s1 * s1))


def _check_perp(chart: StereoChart, y: FinVec) -> None:
    if not is_zero(weak_inner(y, chart.pole.coords), DEFAULT_TOL):
        raise NotInPerp(f"{y!r} is not orthogonal to the pole {chart.pole.coords!r}")


def chart_forward(chart: StereoChart, x: SpherePoint) -> FinVec:
    """The chart map of ``chart`` (u_+ or u_- according to its sign)."""
    return stereo_project(chart.pole.coords, int(chart.sign), x.coords)


def chart_inverse(chart: StereoChart, y: FinVec) -> SpherePoint:
    """
    The inverse of ``chart_forward``.

    Raises:
        NotInPerp: If y is not in {a}^perp.
    """
    _check_perp(chart, y)
    return SpherePoint(stereo_lift(chart.pole.coords, int(chart.sign), y))


def u_plus(chart: StereoChart, x: SpherePoint) -> FinVec:
    """
    u_+(x) = (x - <x,a> a) / (1 - <x,a>) for the pole of ``chart``.

    Raises:
        OutsideChartDomain: If x is the pole.
    """
    return chart_forward(StereoChart(chart.pole, Sign.PLUS), x)


def u_minus(chart: StereoChart, x: SpherePoint) -> FinVec:
    """
    u_-(x) = (x - <x,a> a) / (1 + <x,a>) for the pole of ``chart``.

    Raises:
        OutsideChartDomain: If x is the antipode of the pole.
    """
    return chart_forward(StereoChart(chart.pole, Sign.MINUS), x)


def u_plus_inv(chart: StereoChart, y: FinVec) -> SpherePoint:
    """x = (2y + (<y,y> - 1) a) / (<y,y> + 1)."""
    return chart_inverse(StereoChart(chart.pole, Sign.PLUS), y)


def u_minus_inv(chart: StereoChart, y: FinVec) -> SpherePoint:
    """x = (2y - (<y,y> - 1) a) / (<y,y> + 1)."""
    return chart_inverse(StereoChart(chart.pole, Sign.MINUS), y)


def transition(source: StereoChart, target: StereoChart, y: FinVec) -> FinVec:
    """
    The change of charts u_target o u_source^-1 on {a_source}^perp.

    For the antipodal pair (a, +) -> (a, -) this is y / <y, y>.

    Raises:
        NotInPerp: If y is not in the source hyperplane.
        OutsideChartDomain: If the intermediate point is excluded by ``target``.
    """
    return chart_forward(target, chart_inverse(source, y))


def antipodal_transition(y: FinVec) -> FinVec:
    """Closed form y / <y, y> of the antipodal transition."""
    s = norm_sq(y)
    _guard_nonzero(s, "The antipodal transition is undefined at 0")
    return y / s


# Coordinate chart families


class ChartFamily(ABC):
    """
    A compatible family of chart inverses h_i : R^{d_i} -> U_i, one per level
    i >= ``min_level``, together with their forward charts and both
    differentials. All values are vectors of R^infinity.
    """

    key: str
    min_level: int

    @abstractmethod
    def inverse(self, level: int, ybar: FinVec) -> FinVec:
        """h_i(ybar)."""

    @abstractmethod
    def forward(self, level: int, x: FinVec) -> FinVec:
        """h_i^-1(x)."""

    @abstractmethod
    def inverse_differential(self, level: int, ybar: FinVec, wbar: FinVec) -> FinVec:
        """d h_i(ybar) wbar, a tangent vector at h_i(ybar)."""

    @abstractmethod
    def forward_differential(self, level: int, x: FinVec, v: FinVec) -> FinVec:
        """d(h_i^-1)(x) v."""

    def contains(self, x: FinVec) -> bool:
        try:
            self.forward(max(self.min_level, x.degree), x)
        except (OutsideChartDomain, AmbientTooSmall):
            return False
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ChartFamily) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.key})"


class StereoChartFamily(ChartFamily):
    """
    Stereographic charts with a fixed pole, in coordinates of R^i.

    The hyperplane {a}^perp is identified with R^i through the rational
    Householder reflection exchanging a and e_1 followed by dropping the first
    coordinate. For a = e_1 the reflection is the identity and the coordinates
    are the slots 2, 3, ... of R^infinity.
    """

    def __init__(self, chart: StereoChart):
        self.chart = chart
        self.pole = chart.pole.coords
        self.sigma = int(chart.sign)
        self.key = f"stereo{chart}"
        self.min_level = max(1, self.pole.degree - 1)
        mirror = self.pole - basis(1)
        self._mirror = None if mirror.is_zero() else mirror
        self._mirror_sq = norm_sq(mirror)

    def _reflect(self, v: FinVec) -> FinVec:
        if self._mirror is None:
            return v
        return v - scale(2 * weak_inner(self._mirror, v) / self._mirror_sq, self._mirror)

    def _check_level(self, level: int, degree: int, what: str) -> None:
        if level < self.min_level:
            raise AmbientTooSmall(f"Chart {self.key} needs level >= {self.min_level}, got {level}")
        if degree > level:
            raise AmbientTooSmall(f"{what} of degree {degree} does not fit in R^{level}")

    def inverse(self, level: int, ybar: FinVec) -> FinVec:
        self._check_level(level, ybar.degree, "Chart coordinate")
        return stereo_lift(self.pole, self.sigma, self._reflect(shift(ybar)))

    def forward(self, level: int, x: FinVec) -> FinVec:
        self._check_level(level, x.degree - 1, "Point")
        return unshift(self._reflect(stereo_project(self.pole, self.sigma, x)))

    def inverse_differential(self, level: int, ybar: FinVec, wbar: FinVec) -> FinVec:
        self._check_level(level, max(ybar.degree, wbar.degree), "Chart coordinate")
        y = self._reflect(shift(ybar))
        return stereo_lift_differential(self.pole, self.sigma, y, self._reflect(shift(wbar)))

    def forward_differential(self, level: int, x: FinVec, v: FinVec) -> FinVec:
        self._check_level(level, max(x.degree, v.degree) - 1, "Tangent vector")
        return unshift(self._reflect(stereo_differential(self.pole, self.sigma, x, v)))


class TranslationChartFamily(ChartFamily):
    """Charts h_i(ybar) = ybar + c of the euclidean tower."""

    def __init__(self, center: FinVec):
        self.center = center
        self.key = f"translate({', '.join(str(c) for c in center)})"
        self.min_level = max(1, center.degree)

    def _check_level(self, level: int, degree: int) -> None:
        if level < self.min_level or degree > level:
            raise AmbientTooSmall(f"Chart {self.key}: degree {degree} does not fit at level {level}")

    def inverse(self, level: int, ybar: FinVec) -> FinVec:
        self._check_level(level, ybar.degree)
        return ybar + self.center

    def forward(self, level: int, x: FinVec) -> FinVec:
        self._check_level(level, x.degree)
        return x - self.center

    def inverse_differential(self, level: int, ybar: FinVec, wbar: FinVec) -> FinVec:
        self._check_level(level, max(ybar.degree, wbar.degree))
        return wbar

    def forward_differential(self, level: int, x: FinVec, v: FinVec) -> FinVec:
        self._check_level(level, max(x.degree, v.degree))
        return v


# Towers


class ManifoldTower(ABC):
    """
    A direct sequence of manifolds M_1 -> M_2 -> ... -> M_max embedded in
    R^infinity, with coordinate realizations of phi_ij and lambda_ij.

    Towers registered here are expected to have closed-image embeddings; that
    hypothesis is not checked.
    """

    name: str
    max_level: int

    @property
    def levels(self) -> range:
        return range(1, self.max_level + 1)

    def check_level(self, i: int) -> None:
        if not 1 <= i <= self.max_level:
            raise IndexOutOfRange(f"Level {i} is outside the tower '{self.name}' (1..{self.max_level})")

    @abstractmethod
    def dim(self, i: int) -> int:
        """d_i, the dimension of M_i."""

    @abstractmethod
    def ambient_dim(self, i: int) -> int:
        """Number of leading coordinates of R^infinity that M_i occupies."""

    def bond(self, i: int, j: int, x: FinVec) -> FinVec:
        """phi_ij in ambient coordinates: the inclusion."""
        return finseq.include(x, self.ambient_dim(j))

    def bond_differential(self, i: int, j: int, x: FinVec, v: FinVec) -> FinVec:
        """d phi_ij(x) v; phi_ij is linear so this is phi_ij(v)."""
        return self.bond(i, j, v)

    def coordinate_bond(self, i: int, j: int, ybar: FinVec) -> FinVec:
        """lambda_ij : R^{d_i} -> R^{d_j}, zero padding."""
        return finseq.include(ybar, self.dim(j))

    @abstractmethod
    def point_level(self, x: FinVec) -> int:
        """n(x): the first level whose manifold contains x."""

    def tangent_level(self, x: FinVec, v: FinVec) -> int:
        """The first level whose tangent bundle contains (x, v)."""
        return max(self.point_level(x), self.point_level_of_vector(v))

    @abstractmethod
    def point_level_of_vector(self, v: FinVec) -> int:
        """The first level whose ambient space contains v."""

    @abstractmethod
    def contains(self, i: int, x: FinVec, tol: float = DEFAULT_TOL) -> bool:
        """Whether x is a point of M_i."""

    @abstractmethod
    def normal_component(self, x: FinVec, v: FinVec) -> Scalar:
        """The component of v normal to the limit manifold at x (0 iff tangent)."""

    @abstractmethod
    def tangent_projection(self, x: FinVec, w: FinVec) -> FinVec:
        """Orthogonal projection of w onto the tangent space at x."""

    def is_tangent(self, x: FinVec, v: FinVec, tol: float = DEFAULT_TOL) -> bool:
        """Whether v is tangent to the limit manifold at x."""
        return is_zero(self.normal_component(x, v), tol)

    @abstractmethod
    def chart_family(self, x: FinVec, mode: Optional[ScalarMode] = None) -> ChartFamily:
        """The chart family governing a neighbourhood of x."""

    @abstractmethod
    def atlas(self) -> List[ChartFamily]:
        """Three chart families used for overlap and cocycle checks."""

    @abstractmethod
    def random_point(self, level: int, rng: np.random.Generator, mode: ScalarMode) -> FinVec:
        """A random point of M_level (exactly on M_level in rational mode)."""

    def random_coordinates(self, level: int, rng: np.random.Generator, mode: ScalarMode) -> FinVec:
        """A random vector of R^{d_level} with small entries."""
        return FinVec(tuple(random_scalar(rng, mode, bound=2) for _ in range(self.dim(level))))


class SphereTower(ManifoldTower):
    """S^1 c S^2 c ... c S^max_level with the stereographic atlas."""

    def __init__(self, max_level: int):
        self.name = "sphere"
        self.max_level = max_level
        self._e1 = SpherePoint(basis(1))
        self._atlas = [
            StereoChartFamily(StereoChart(SpherePoint(basis(1)), Sign.PLUS)),
            StereoChartFamily(StereoChart(SpherePoint(basis(2)), Sign.PLUS)),
            StereoChartFamily(StereoChart(SpherePoint(FinVec((Fraction(3, 5), 0, Fraction(4, 5)))), Sign.PLUS)),
        ]

    def dim(self, i: int) -> int:
        return i

    def ambient_dim(self, i: int) -> int:
        return i + 1

    def point_level(self, x: FinVec) -> int:
        return max(1, x.degree - 1)

    def point_level_of_vector(self, v: FinVec) -> int:
        return max(1, v.degree - 1)

    def contains(self, i: int, x: FinVec, tol: float = DEFAULT_TOL) -> bool:
        return x.degree <= i + 1 and is_zero(norm_sq(x) - 1, tol)

    def normal_component(self, x: FinVec, v: FinVec) -> Scalar:
        return weak_inner(x, v)

    def tangent_projection(self, x: FinVec, w: FinVec) -> FinVec:
        return w - scale(weak_inner(w, x), x)

    def chart_family(self, x: FinVec, mode: Optional[ScalarMode] = None) -> ChartFamily:
        """
        Pole e_1; the + chart unless x is (numerically) the pole itself.
        """
        first = x.coord(1)
        near_pole = first == 1 if is_exact(first) else first >= 1 - DOMAIN_GUARD
        sign = Sign.MINUS if near_pole else Sign.PLUS
        return StereoChartFamily(StereoChart(self._e1, sign))

    def atlas(self) -> List[ChartFamily]:
        return list(self._atlas)

    def random_point(self, level: int, rng: np.random.Generator, mode: ScalarMode) -> FinVec:
        if mode is ScalarMode.RATIONAL:
            return random_rational_sphere_point(level, rng).coords
        return random_sphere_point(level, rng).coords


class EuclideanTower(ManifoldTower):
    """R^1 c R^2 c ... with translated identity charts."""

    def __init__(self, max_level: int):
        self.name = "euclidean"
        self.max_level = max_level
        self._atlas = [
            TranslationChartFamily(FinVec()),
            TranslationChartFamily(basis(1)),
            TranslationChartFamily(FinVec((Fraction(1), Fraction(-1, 2)))),
        ]

    def dim(self, i: int) -> int:
        return i

    def ambient_dim(self, i: int) -> int:
        return i

    def point_level(self, x: FinVec) -> int:
        return max(1, x.degree)

    def point_level_of_vector(self, v: FinVec) -> int:
        return max(1, v.degree)

    def contains(self, i: int, x: FinVec, tol: float = DEFAULT_TOL) -> bool:
        return x.degree <= i

    def normal_component(self, x: FinVec, v: FinVec) -> Scalar:
        return 0 * weak_inner(x, v)

    def tangent_projection(self, x: FinVec, w: FinVec) -> FinVec:
        return w

    def chart_family(self, x: FinVec, mode: Optional[ScalarMode] = None) -> ChartFamily:
        return self._atlas[0]

    def atlas(self) -> List[ChartFamily]:
        return list(self._atlas)

    def random_point(self, level: int, rng: np.random.Generator, mode: ScalarMode) -> FinVec:
        return self.random_coordinates(level, rng, mode)


class FaultInjectedTower(ManifoldTower):
    """
    Wraps a tower and corrupts one of its bonding maps.

    ``drop-coordinate`` makes lambda_ij forget coordinate d_i when i < j;
    ``sign-flip`` makes phi_ij negate points when i < j.
    """

    FAULTS = ("drop-coordinate", "sign-flip")

    def __init__(self, base: ManifoldTower, fault: str):
        if fault not in self.FAULTS:
            raise ValueError(f"Unknown fault '{fault}'. Available faults: {', '.join(self.FAULTS)}")
        self.base = base
        self.fault = fault
        self.name = f"{base.name}+{fault}"
        self.max_level = base.max_level

    def dim(self, i: int) -> int:
        return self.base.dim(i)

    def ambient_dim(self, i: int) -> int:
        return self.base.ambient_dim(i)

    def bond(self, i: int, j: int, x: FinVec) -> FinVec:
        image = self.base.bond(i, j, x)
        if self.fault == "sign-flip" and i < j:
            return -image
        return image

    def coordinate_bond(self, i: int, j: int, ybar: FinVec) -> FinVec:
        image = self.base.coordinate_bond(i, j, ybar)
        if self.fault == "drop-coordinate" and i < j:
            return finseq.truncate(image, self.dim(i) - 1)
        return image

    def point_level(self, x: FinVec) -> int:
        return self.base.point_level(x)

    def point_level_of_vector(self, v: FinVec) -> int:
        return self.base.point_level_of_vector(v)

    def contains(self, i: int, x: FinVec, tol: float = DEFAULT_TOL) -> bool:
        return self.base.contains(i, x, tol)

    def normal_component(self, x: FinVec, v: FinVec) -> Scalar:
        return self.base.normal_component(x, v)

    def tangent_projection(self, x: FinVec, w: FinVec) -> FinVec:
        return self.base.tangent_projection(x, w)

    def chart_family(self, x: FinVec, mode: Optional[ScalarMode] = None) -> ChartFamily:
        return self.base.chart_family(x, mode)

    def atlas(self) -> List[ChartFamily]:
        return self.base.atlas()

    def random_point(self, level: int, rng: np.random.Generator, mode: ScalarMode) -> FinVec:
        return self.base.random_point(level, rng, mode)


def sphere_tower(max_dim: int) -> SphereTower:
    """
    The sphere tower truncated at S^max_dim.

    Raises:
        ValueError: If max_dim < 2.
    """
    if max_dim < 2:
        raise ValueError(f"The sphere tower needs max_dim >= 2, got {max_dim}")
    return SphereTower(max_dim)


def euclidean_tower(max_dim: int) -> EuclideanTower:
    if max_dim < 1:
        raise ValueError(f"The euclidean tower needs max_dim >= 1, got {max_dim}")
    return EuclideanTower(max_dim)


TOWERS: Dict[str, Callable[[int], ManifoldTower]] = {
    "sphere": sphere_tower,
    "euclidean": euclidean_tower,
}


def get_tower(name: str, max_dim: int, fault: Optional[str] = None) -> ManifoldTower:
    """
    Build a registered tower by name, optionally wrapped with a fault.

    Raises:
        UnknownTower: If the name is not registered.
    """
    try:
        factory = TOWERS[name]
    except KeyError:
        raise UnknownTower(f"Unknown tower '{name}'. Available towers: {', '.join(TOWERS)}") from None
    tower = factory(max_dim)
    if fault and fault != "none":
        logger.info(f"Injecting fault '{fault}' into tower '{name}'")
        tower = FaultInjectedTower(tower, fault)
    return tower


def random_sphere_point(dim: int, seed: Union[int, np.random.Generator, None]) -> SpherePoint:
    """
    A random float point of S^dim, supported on the first dim + 1 coordinates.

    Deterministic for a fixed (dim, seed); a Generator may be passed instead of
    a seed.
    """
    if dim < 1:
        raise ValueError(f"Sphere dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    while True:
        gaussian = rng.standard_normal(dim + 1)
        norm = float(np.linalg.norm(gaussian))
        if norm > 1e-6:
            break
    return SpherePoint(finseq.from_sequence(gaussian / norm))


def random_rational_sphere_point(dim: int, rng: np.random.Generator) -> SpherePoint:
    """
    A random point of S^dim with rational coordinates: the inverse stereographic
    image (pole e_1) of a random rational vector of R^dim.
    """
    if dim < 1:
        raise ValueError(f"Sphere dimension must be >= 1, got {dim}")
    ybar = FinVec(tuple(random_scalar(rng, ScalarMode.RATIONAL, bound=2) for _ in range(dim)))
    return SpherePoint(stereo_lift(basis(1), 1, shift(ybar)))


def chart_compatibility(tower: ManifoldTower, family: ChartFamily, i: int, j: int, ybar: FinVec) -> Tuple[FinVec, FinVec]:
    """
    Both sides of h_j o lambda_ij = phi_ij o h_i evaluated at ybar.

    Returns:
        (h_j(lambda_ij(ybar)), phi_ij(h_i(ybar)))
    """
    left = family.inverse(j, tower.coordinate_bond(i, j, ybar))
    right = tower.bond(i, j, family.inverse(i, ybar))
    return left, right


def coordinate_transition(source: ChartFamily, target: ChartFamily, level: int, ybar: FinVec) -> FinVec:
    """target o source^-1 on chart coordinates at one level."""
    return target.forward(level, source.inverse(level, ybar))
