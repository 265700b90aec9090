"""
Direct limits of sequences of objects.

A ``DirectedSystem`` is a sequence of objects X_i (i in a finite index range)
with bonding maps eps_ij : X_i -> X_j for i <= j. The limit is modelled as the
quotient of the disjoint union: a ``LimitElement`` is a pair (level, rep) and
two pairs are equivalent when they agree after being pushed to the larger of
their two levels. Every identity is checked on finite samples only.
"""

import logging
import operator
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import ConeConditionViolated, IndexOutOfRange, SystemMismatch
from . import finseq
from .finseq import FinVec

logger = logging.getLogger(__name__)

# Composition identities are checked for k <= i + COMPOSITION_SPAN.
COMPOSITION_SPAN = 4


@dataclass(frozen=True, eq=False)
class DirectedSystem:
    """
    A directed sequence (X_i, eps_ij).

    Attributes:
        name: Human readable name, used in reports.
        objects: Map from level index to an object descriptor.
        bond: ``bond(i, j, x)`` evaluates eps_ij on an element x of X_i. Must be pure.
        injective: Whether every eps_ij is injective.
        eq: Equality of elements of one object.
        lowest_level: Optional ``lowest_level(level, x)`` returning the smallest
            level at which the element has a preimage; enables canonical forms.
        descend: Optional ``descend(level, x, target)`` returning the preimage of x
            at ``target``; required together with ``lowest_level``.
    """

    name: str
    objects: Mapping[int, Any]
    bond: Callable[[int, int, Any], Any]
    injective: bool = True
    eq: Callable[[Any, Any], bool] = operator.eq
    lowest_level: Optional[Callable[[int, Any], int]] = None
    descend: Optional[Callable[[int, Any, int], Any]] = None

    def check_index(self, i: int) -> None:
        if i not in self.objects:
            raise IndexOutOfRange(f"Level {i} is not an object of the system '{self.name}'")


@dataclass(frozen=True)
class LimitElement:
    """The class (level, rep) of the disjoint-union quotient."""

    system: DirectedSystem = field(compare=False, repr=False)
    level: int
    rep: Any


@dataclass(frozen=True)
class Violation:
    law: str
    indices: Tuple[int, ...]
    sample: Any
    left: Any
    right: Any


@dataclass
class ValidationReport:
    system: str
    samples: int
    seed: Optional[int] = None
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(
    system: DirectedSystem,
    samples: Iterable[Tuple[int, Any]],
    seed: Optional[int] = None,
) -> ValidationReport:
    """
    Check eps_ii = Id and eps_jk o eps_ij = eps_ik on sampled elements.

    Args:
        system: The directed system to check.
        samples: Pairs (i, x) with x an element of X_i.
        seed: Seed that produced the samples, recorded in the report.

    Returns:
        ValidationReport: Every violated identity with its witnessing sample.

    Raises:
        IndexOutOfRange: If a sample's level is not in the system.
    """
    samples = list(samples)
    report = ValidationReport(system=system.name, samples=len(samples), seed=seed)
    levels = sorted(system.objects)

    for i, x in samples:
        system.check_index(i)
        identity = system.bond(i, i, x)
        if not system.eq(identity, x):
            report.violations.append(Violation("identity", (i,), x, identity, x))

        upper = [level for level in levels if i <= level <= i + COMPOSITION_SPAN]
        for j in upper:
            x_j = system.bond(i, j, x)
            for k in (level for level in upper if level >= j):
                composite = system.bond(j, k, x_j)
                direct = system.bond(i, k, x)
                if not system.eq(composite, direct):
                    report.violations.append(Violation("composition", (i, j, k), x, composite, direct))

    if report.violations:
        logger.warning(
            f"System '{system.name}': {len(report.violations)} bonding-law violations "
            f"on {report.samples} samples (seed {seed})"
        )
    return report


def inject(system: DirectedSystem, i: int, x: Any) -> LimitElement:
    """
    The canonical map eps_i : X_i -> lim X.

    Raises:
        IndexOutOfRange: If level i is not in the system.
    """
    system.check_index(i)
    return LimitElement(system, i, x)


def canonicalize(element: LimitElement) -> LimitElement:
    """
    Move an element down to the lowest level at which it has a preimage.

    Systems without a ``lowest_level`` test keep the construction level.
    """
    system = element.system
    if system.lowest_level is None or system.descend is None:
        return element
    target = max(system.lowest_level(element.level, element.rep), min(system.objects))
    if target >= element.level:
        return element
    return LimitElement(system, target, system.descend(element.level, element.rep, target))


def equivalent(a: LimitElement, b: LimitElement) -> bool:
    """
    (i, x) ~ (j, y) iff both agree at level max(i, j).

    Raises:
        SystemMismatch: If the elements come from different systems.
    """
    if a.system is not b.system:
        raise SystemMismatch(
            f"Cannot compare elements of '{a.system.name}' and '{b.system.name}'"
        )
    system = a.system
    top = max(a.level, b.level)
    return system.eq(system.bond(a.level, top, a.rep), system.bond(b.level, top, b.rep))


Cone = Union[Mapping[int, Callable[[Any], Any]], Callable[[int, Any], Any]]


def _cone_leg(cone: Cone, i: int) -> Callable[[Any], Any]:
    if callable(cone):
        return lambda x: cone(i, x)
    return cone[i]


def universal_map(
    system: DirectedSystem,
    cone: Cone,
    check_samples: Sequence[Tuple[int, Any]],
    target_eq: Callable[[Any, Any], bool] = operator.eq,
) -> Callable[[LimitElement], Any]:
    """
    The unique map psi : lim X -> Y induced by a cone (psi_i : X_i -> Y).

    The cone condition psi_j o eps_ij = psi_i is verified on ``check_samples``
    for every j in range i..i+4 before the map is built.

    Args:
        system: The directed system.
        cone: Either a mapping from level to psi_i or a function ``psi(i, x)``.
        check_samples: Pairs (i, x) used to verify the cone condition.
        target_eq: Equality in the target.

    Returns:
        A function sending ``inject(i, x)`` to ``psi_i(x)``.

    Raises:
        ConeConditionViolated: With the witnessing (i, j, x) if the check fails.
    """
    levels = sorted(system.objects)
    for i, x in check_samples:
        system.check_index(i)
        value = _cone_leg(cone, i)(x)
        for j in (level for level in levels if i < level <= i + COMPOSITION_SPAN):
            pushed = _cone_leg(cone, j)(system.bond(i, j, x))
            if not target_eq(pushed, value):
                raise ConeConditionViolated(
                    f"Cone condition psi_{j} o eps_{i}{j} = psi_{i} fails on {x!r}",
                    witness=(i, j, x),
                )

    def psi(element: LimitElement) -> Any:
        if element.system is not system:
            raise SystemMismatch(f"Element does not belong to '{system.name}'")
        return _cone_leg(cone, element.level)(element.rep)

    return psi


def is_injective_on(system: DirectedSystem, samples: Sequence[Tuple[int, Any]]) -> List[Tuple[Any, Any]]:
    """
    Strictness proxy: pairs of distinct sampled inputs at the same level whose
    images coincide at some level up to COMPOSITION_SPAN above it. Empty when
    inject is injective on the samples.
    """
    collisions = []
    levels = sorted(system.objects)
    for p, (i, x) in enumerate(samples):
        system.check_index(i)
        for k, y in samples[p + 1:]:
            if k != i or system.eq(x, y):
                continue
            for j in (level for level in levels if i <= level <= i + COMPOSITION_SPAN):
                if system.eq(system.bond(i, j, x), system.bond(i, j, y)):
                    collisions.append((inject(system, i, x), inject(system, i, y)))
                    break
    return collisions


def euclidean_system(max_dim: int) -> DirectedSystem:
    """The tower R^1 -> R^2 -> ... -> R^max_dim with zero-padding bonds."""
    return DirectedSystem(
        name="euclidean",
        objects={n: f"R^{n}" for n in range(1, max_dim + 1)},
        bond=lambda i, j, x: finseq.include(x, j),
        injective=True,
        lowest_level=lambda i, x: max(x.degree, 1),
        descend=lambda i, x, target: finseq.include(x, target),
    )


def gl_system(max_dim: int) -> DirectedSystem:
    """The tower GL(R^1) -> GL(R^2) -> ... with the block embeddings."""
    from . import glinf

    return DirectedSystem(
        name="gl",
        objects={n: f"GL(R^{n})" for n in range(1, max_dim + 1)},
        bond=lambda i, j, g: glinf.embed(g, j),
        injective=True,
        lowest_level=lambda i, g: max(g.size, 1),
        descend=lambda i, g, target: glinf.embed(g, target),
    )


def vector_system_with_bonds(name: str, max_dim: int, bonds: Dict[Tuple[int, int], Callable[[FinVec], FinVec]]) -> DirectedSystem:
    """
    An R^n tower whose bonding maps are overridden for the given (i, j) pairs.

    Used to build deliberately corrupted systems.
    """
    def bond(i: int, j: int, x: FinVec) -> FinVec:
        if (i, j) in bonds:
            return bonds[(i, j)](x)
        return finseq.include(x, j)

    return DirectedSystem(name=name, objects={n: f"R^{n}" for n in range(1, max_dim + 1)}, bond=bond)
