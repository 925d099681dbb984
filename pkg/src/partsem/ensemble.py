"""Index semigroups over I and enumeration of the induced transformation semigroup.

An ``Instance`` pins down one semigroup of study: the preserving self-maps of
X whose character lies in the chosen composition-closed set of self-maps of I.
Enumeration goes character by character: the fiber over alpha is the product
of all block maps X_i -> X_{alpha(i)}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InvalidArgumentError, PreconditionError, ResourceLimitError
from .finite_maps import FiniteMap, compose
from .partition_action import Partition, is_unit_bijection

DEFAULT_ENUMERATION_CAP = 100_000


@dataclass(frozen=True)
class IndexSemigroup:
    """An explicit composition-closed set of self-maps of [0, degree)."""

    degree: int
    elements: tuple[FiniteMap, ...]
    has_identity: bool = False

    def __post_init__(self) -> None:
        canon = tuple(sorted(set(self.elements), key=lambda m: m.images))
        object.__setattr__(self, "elements", canon)
        if not canon:
            raise InvalidArgumentError("an index semigroup needs at least one element")
        for m in canon:
            if m.domain_size != self.degree or m.codomain_size != self.degree:
                raise InvalidArgumentError(f"{m} is not a self-map of [0, {self.degree})")
        pool = {m.images for m in canon}
        for a in canon:
            for b in canon:
                ab = compose(a, b)
                if ab.images not in pool:
                    raise InvalidArgumentError(
                        f"not closed under composition: {a} * {b} = {ab} is missing"
                    )
        ident = tuple(range(self.degree))
        object.__setattr__(self, "has_identity", ident in pool)

    @classmethod
    def from_maps(cls, maps: Iterable[FiniteMap]) -> "IndexSemigroup":
        maps = tuple(maps)
        if not maps:
            raise InvalidArgumentError("empty element set")
        return cls(maps[0].domain_size, maps)

    @classmethod
    def full(cls, degree: int) -> "IndexSemigroup":
        """All degree^degree self-maps of I."""
        elements = tuple(
            FiniteMap(degree, degree, images)
            for images in itertools.product(range(degree), repeat=degree)
        )
        return cls(degree, elements)

    @classmethod
    def symmetric(cls, degree: int) -> "IndexSemigroup":
        """All permutations of I."""
        elements = tuple(
            FiniteMap(degree, degree, images)
            for images in itertools.permutations(range(degree))
        )
        return cls(degree, elements)

    @classmethod
    def trivial(cls, degree: int) -> "IndexSemigroup":
        return cls(degree, (FiniteMap.identity(degree),))

    @classmethod
    def identity_with_constants(cls, degree: int) -> "IndexSemigroup":
        elements = [FiniteMap.identity(degree)]
        elements += [FiniteMap.constant(degree, j) for j in range(degree)]
        return cls(degree, tuple(elements))

    def __contains__(self, m: FiniteMap) -> bool:
        return m in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def closure_from_generators(gens: Iterable[FiniteMap]) -> IndexSemigroup:
    """The smallest composition-closed superset of the generators."""
    gens = tuple(gens)
    if not gens:
        raise InvalidArgumentError("at least one generator is required")
    degree = gens[0].domain_size
    for g in gens:
        if g.domain_size != degree or g.codomain_size != degree:
            raise InvalidArgumentError("generators must be self-maps of one set")
    elements = {g.images: g for g in gens}
    frontier = list(elements.values())
    while frontier:
        fresh = []
        for a in list(elements.values()):
            for b in frontier:
                for c in (compose(a, b), compose(b, a)):
                    if c.images not in elements:
                        elements[c.images] = c
                        fresh.append(c)
        frontier = fresh
    return IndexSemigroup(degree, tuple(elements.values()))


@dataclass(frozen=True)
class Instance:
    """One partitioned set together with its admissible character set."""

    partition: Partition
    si: IndexSemigroup

    def __post_init__(self) -> None:
        if self.si.degree != self.partition.degree:
            raise InvalidArgumentError(
                f"index semigroup degree {self.si.degree} != "
                f"number of blocks {self.partition.degree}"
            )

    def __repr__(self) -> str:
        return f"Instance({self.partition!r}, |si|={len(self.si)})"


def predicted_size(inst: Instance) -> int:
    """Closed-form member count: sum over characters of the block-map products."""
    sizes = [len(b) for b in inst.partition.blocks]
    total = 0
    for alpha in inst.si.elements:
        total += math.prod(sizes[alpha.images[i]] ** sizes[i] for i in range(len(sizes)))
    return total


@lru_cache(maxsize=None)
def _materialize(inst: Instance) -> tuple[FiniteMap, ...]:
    p = inst.partition
    found: list[tuple[int, ...]] = []
    for alpha in inst.si.elements:
        choices = [p.blocks[alpha.images[p.block_of(x)]] for x in range(p.n)]
        found.extend(itertools.product(*choices))
    found = sorted(set(found))
    return tuple(FiniteMap(p.n, p.n, images) for images in found)


def enumerate_elements(inst: Instance, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[FiniteMap, ...]:
    """All members in lexicographic image order; refuses oversize instances."""
    size = predicted_size(inst)
    if size > cap:
        raise ResourceLimitError(
            f"instance has {size} members, above the cap of {cap}"
        )
    return _materialize(inst)


@lru_cache(maxsize=None)
def member_index(inst: Instance) -> dict[tuple[int, ...], int]:
    """Image tuple -> position in enumeration order."""
    return {m.images: k for k, m in enumerate(_materialize(inst))}


def is_member(f: FiniteMap, inst: Instance) -> bool:
    if f.domain_size != inst.partition.n or f.codomain_size != inst.partition.n:
        return False
    return f.images in member_index(inst)


def require_member(f: FiniteMap, inst: Instance) -> None:
    if not is_member(f, inst):
        raise InvalidArgumentError(f"{f} is not a member of {inst!r}")


@lru_cache(maxsize=None)
def units(inst: Instance) -> tuple[FiniteMap, ...]:
    """Members with a two-sided inverse in the member set, in enumeration order.

    Computed from the definition, then cross-checked against the intersection
    with S(X, P); any mismatch is an internal error.
    """
    if not inst.si.has_identity:
        raise PreconditionError("units require the identity character")
    members = _materialize(inst)
    ident = FiniteMap.identity(inst.partition.n)
    by_definition = []
    for f in members:
        for g in members:
            if compose(f, g) == ident and compose(g, f) == ident:
                by_definition.append(f)
                break
    by_formula = [f for f in members if is_unit_bijection(f, inst.partition)]
    assert by_definition == by_formula, "unit set identity failed on a finite instance"
    return tuple(by_definition)


@lru_cache(maxsize=None)
def index_units(si: IndexSemigroup) -> tuple[FiniteMap, ...]:
    """Units of the index semigroup, by the two-sided-inverse definition."""
    ident = FiniteMap.identity(si.degree)
    found = []
    for a in si.elements:
        for b in si.elements:
            if compose(a, b) == ident and compose(b, a) == ident:
                found.append(a)
                break
    return tuple(found)


@lru_cache(maxsize=None)
def index_idempotents(si: IndexSemigroup) -> tuple[FiniteMap, ...]:
    return tuple(a for a in si.elements if compose(a, a) == a)
