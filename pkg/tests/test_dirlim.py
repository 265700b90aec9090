import pytest

from limit_bundle.errors import ConeConditionViolated, IndexOutOfRange, SystemMismatch
from limit_bundle.geometry import dirlim, finseq
from limit_bundle.geometry.finseq import FinVec


@pytest.fixture
def system():
    return dirlim.euclidean_system(6)


def test_zero_padding_tower_satisfies_the_bonding_laws(system):
    samples = [(1, finseq.make([1])), (3, finseq.make([1, 2, 3])), (4, FinVec())]
    report = dirlim.validate(system, samples, seed=7)
    assert report.ok
    assert report.samples == 3
    assert report.seed == 7


def test_validate_rejects_unknown_levels(system):
    with pytest.raises(IndexOutOfRange):
        dirlim.validate(system, [(9, finseq.make([1]))])


def test_corrupted_bond_breaks_composition():
    bad = dirlim.vector_system_with_bonds("bad", 6, {(2, 3): lambda x: -x})
    report = dirlim.validate(bad, [(2, finseq.make([1, 1]))])
    assert not report.ok
    assert any(v.law == "composition" and v.indices == (2, 3, 4) for v in report.violations)


def test_corrupted_bond_is_reported_from_below():
    bad = dirlim.vector_system_with_bonds("bad", 6, {(2, 3): lambda x: -x})
    report = dirlim.validate(bad, [(1, finseq.make([1]))])
    composition = [v for v in report.violations if v.law == "composition"]
    assert composition[0].indices == (1, 2, 3)


def test_corrupted_identity_is_reported():
    bad = dirlim.vector_system_with_bonds("bad", 4, {(2, 2): lambda x: 2 * x})
    report = dirlim.validate(bad, [(2, finseq.make([1, 1]))])
    assert [v.law for v in report.violations if v.law == "identity"] == ["identity"]


def test_inject_then_push_is_equivalent(system):
    a = dirlim.inject(system, 2, finseq.make([1, 2]))
    b = dirlim.inject(system, 3, finseq.include(finseq.make([1, 2]), 3))
    assert dirlim.equivalent(a, b)
    assert dirlim.equivalent(b, a)
    assert not dirlim.equivalent(a, dirlim.inject(system, 3, finseq.make([1, 2, 1])))


def test_inject_rejects_unknown_levels(system):
    with pytest.raises(IndexOutOfRange):
        dirlim.inject(system, 0, FinVec())


def test_elements_of_different_systems_do_not_compare(system):
    other = dirlim.euclidean_system(6)
    with pytest.raises(SystemMismatch):
        dirlim.equivalent(dirlim.inject(system, 1, FinVec()), dirlim.inject(other, 1, FinVec()))


def test_canonicalize_moves_to_the_lowest_level(system):
    element = dirlim.canonicalize(dirlim.inject(system, 5, finseq.make([1, 2])))
    assert element.level == 2
    assert element.rep == finseq.make([1, 2])
    assert dirlim.canonicalize(dirlim.inject(system, 4, FinVec())).level == 1


def test_canonicalize_keeps_level_without_a_membership_test():
    plain = dirlim.vector_system_with_bonds("plain", 5, {})
    assert dirlim.canonicalize(dirlim.inject(plain, 4, finseq.make([1]))).level == 4


def test_universal_map_of_a_compatible_cone(system):
    psi = dirlim.universal_map(
        system,
        lambda i, x: finseq.norm_sq(x),
        [(1, finseq.make([2])), (2, finseq.make([1, 1]))],
    )
    assert psi(dirlim.inject(system, 2, finseq.make([1, 1]))) == 2
    assert psi(dirlim.inject(system, 5, finseq.make([1, 1]))) == 2


def test_universal_map_accepts_a_mapping_of_legs():
    system = dirlim.euclidean_system(3)
    legs = {i: (lambda x: x.coord(1)) for i in system.objects}
    psi = dirlim.universal_map(system, legs, [(1, finseq.make([3]))])
    assert psi(dirlim.inject(system, 3, finseq.make([3, 4]))) == 3


def test_cone_violation_carries_a_witness(system):
    x = finseq.make([3])
    with pytest.raises(ConeConditionViolated) as exc:
        dirlim.universal_map(system, lambda i, w: i * w.coord(1), [(1, x)])
    assert exc.value.witness == (1, 2, x)


def test_injective_bonds_give_no_collisions(system):
    samples = [(2, finseq.make([1, 2])), (2, finseq.make([1, 3])), (3, finseq.make([1, 2]))]
    assert dirlim.is_injective_on(system, samples) == []


def test_collapsing_bond_is_caught_by_the_strictness_proxy():
    collapsing = dirlim.vector_system_with_bonds("collapse", 4, {(1, 2): lambda x: FinVec()})
    collisions = dirlim.is_injective_on(collapsing, [(1, finseq.make([1])), (1, finseq.make([2]))])
    assert len(collisions) == 1
