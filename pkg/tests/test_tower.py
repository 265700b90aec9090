from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from limit_bundle.errors import NotInPerp, NotOnSphere, OutsideChartDomain, UnknownTower
from limit_bundle.geometry import finseq, tower
from limit_bundle.geometry.finseq import FinVec
from limit_bundle.geometry.tower import (
    FaultInjectedTower,
    Sign,
    SpherePoint,
    StereoChart,
    StereoChartFamily,
)
from limit_bundle.utils.scalars import ScalarMode

E1 = SpherePoint(finseq.basis(1))
PLUS = StereoChart(E1, Sign.PLUS)
MINUS = StereoChart(E1, Sign.MINUS)
TILTED = StereoChart(SpherePoint(finseq.make([Fraction(3, 5), 0, Fraction(4, 5)])), Sign.PLUS)

coords = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=1, max_size=4).map(finseq.make)


def point(*values):
    return SpherePoint(finseq.make([Fraction(v) for v in values]))


def test_u_plus_fixes_the_equator():
    assert tower.u_plus(PLUS, point(0, 1)) == finseq.make([0, 1])


def test_u_plus_and_u_minus_on_a_rational_point():
    x = point(Fraction(3, 5), Fraction(4, 5))
    assert tower.u_plus(PLUS, x) == finseq.make([0, 2])
    assert tower.u_minus(PLUS, x) == finseq.make([0, Fraction(1, 2)])
    assert tower.u_plus_inv(PLUS, finseq.make([0, 2])) == x
    assert tower.u_minus_inv(PLUS, finseq.make([0, Fraction(1, 2)])) == x


def test_antipodal_transition_inverts_the_radius():
    y = finseq.make([0, 2])
    assert tower.transition(PLUS, MINUS, y) == finseq.make([0, Fraction(1, 2)])
    assert tower.antipodal_transition(y) == finseq.make([0, Fraction(1, 2)])
    with pytest.raises(OutsideChartDomain):
        tower.antipodal_transition(FinVec())


def test_excluded_points_are_rejected():
    with pytest.raises(OutsideChartDomain):
        tower.u_plus(PLUS, E1)
    with pytest.raises(OutsideChartDomain):
        tower.u_minus(PLUS, point(-1))


def test_chart_inverse_needs_the_hyperplane():
    with pytest.raises(NotInPerp):
        tower.u_plus_inv(PLUS, finseq.make([1, 1]))


def test_sphere_points_have_unit_norm():
    with pytest.raises(NotOnSphere):
        point(1, 1)


def test_stereo_differential_at_the_equator():
    v = tower.stereo_differential(finseq.basis(1), 1, finseq.basis(2), finseq.basis(1))
    assert v == finseq.basis(2)


@given(coords)
def test_tilted_family_round_trips_exactly(ybar):
    family = StereoChartFamily(TILTED)
    level = max(family.min_level, ybar.degree)
    x = family.inverse(level, ybar)
    assert finseq.norm_sq(x) == 1
    assert x.degree <= level + 1
    assert family.forward(level, x) == ybar


@given(coords, st.integers(min_value=0, max_value=3))
def test_charts_are_compatible_with_the_bonds(ybar, extra):
    sphere = tower.sphere_tower(8)
    for family in sphere.atlas():
        i = max(family.min_level, ybar.degree)
        left, right = tower.chart_compatibility(sphere, family, i, i + extra, ybar)
        assert left == right


def test_dropped_coordinate_breaks_compatibility():
    faulty = FaultInjectedTower(tower.sphere_tower(6), "drop-coordinate")
    family = faulty.atlas()[0]
    left, right = tower.chart_compatibility(faulty, family, 2, 4, finseq.make([1, 2]))
    assert left != right


def test_coordinate_transition_between_antipodal_charts():
    plus, minus = StereoChartFamily(PLUS), StereoChartFamily(MINUS)
    assert tower.coordinate_transition(plus, minus, 1, finseq.make([2])) == finseq.make([Fraction(1, 2)])


def test_sphere_membership_and_tangency(sphere):
    e2, e3 = finseq.basis(2), finseq.basis(3)
    assert sphere.contains(2, e3)
    assert not sphere.contains(1, e3)
    assert sphere.is_tangent(e2, finseq.basis(1))
    assert not sphere.is_tangent(e2, e2)
    assert sphere.tangent_projection(finseq.basis(1), finseq.make([1, 1])) == e2
    assert sphere.point_level(e3) == 2


def test_chart_family_avoids_the_pole(sphere):
    assert sphere.chart_family(finseq.basis(1)).sigma == -1
    assert sphere.chart_family(finseq.basis(2)).sigma == 1
    assert sphere.chart_family(finseq.basis(2)).contains(finseq.basis(2))


def test_euclidean_tower_is_flat(euclidean):
    x = finseq.make([1, 2, 3])
    assert euclidean.point_level(x) == 3
    assert euclidean.is_tangent(x, finseq.make([5]))
    family = euclidean.atlas()[1]
    assert family.forward(3, family.inverse(3, x)) == x


def test_get_tower():
    assert isinstance(tower.get_tower("sphere", 4), tower.SphereTower)
    assert isinstance(tower.get_tower("sphere", 4, "sign-flip"), FaultInjectedTower)
    assert isinstance(tower.get_tower("euclidean", 1, "none"), tower.EuclideanTower)
    with pytest.raises(UnknownTower):
        tower.get_tower("torus", 4)
    with pytest.raises(ValueError):
        tower.get_tower("sphere", 1)
    with pytest.raises(ValueError):
        FaultInjectedTower(tower.sphere_tower(3), "bogus")


def test_random_sphere_point_is_deterministic():
    a = tower.random_sphere_point(3, 42)
    b = tower.random_sphere_point(3, 42)
    assert a == b
    assert a.coords.degree <= 4
    assert abs(float(finseq.norm_sq(a.coords)) - 1.0) < 1e-12
    assert tower.random_sphere_point(3, 43) != a


def test_random_points_lie_on_their_level(sphere, rng):
    for level in (1, 3, 5):
        x = sphere.random_point(level, rng, ScalarMode.RATIONAL)
        assert sphere.contains(level, x)
        assert finseq.norm_sq(x) == 1
        y = sphere.random_point(level, rng, ScalarMode.FLOAT)
        assert sphere.contains(level, y)
        assert isinstance(y.coord(1), float)


def test_float_charts_agree_with_exact_ones():
    family = StereoChartFamily(TILTED)
    ybar = finseq.make([Fraction(1), Fraction(-1, 2)])
    exact = family.inverse(2, ybar)
    approx = family.inverse(2, finseq.to_mode(ybar, ScalarMode.FLOAT))
    assert np.allclose(np.array(exact.padded(3), dtype=float), np.array(approx.padded(3), dtype=float))
