"""Unit-regular elements and semigroups, with the collapse/defect bookkeeping.

The unit inverse construction pairs image points with transversal preimages
and matches defect points to collapsed points order-preservingly, block by
block; the unused blocks are carried by order-preserving bijections.
"""

from __future__ import annotations

from .errors import InvalidArgumentError, PreconditionError
from .finite_maps import (
    FiniteMap,
    collapse_defect,
    compose,
    image,
    kernel_partition,
)
from .ensemble import (
    Instance,
    enumerate_elements,
    index_units,
    require_member,
    units,
)
from .partition_action import character, is_unit_bijection
from .regularity import Mode, _check_mode


def is_unit_regular_oracle(f: FiniteMap, inst: Instance) -> FiniteMap | None:
    """First unit u in enumeration order with f*u*f = f, if any."""
    if not inst.si.has_identity:
        raise PreconditionError("unit-regularity needs the identity character")
    require_member(f, inst)
    for u in units(inst):
        if compose(compose(f, u), f) == f:
            return u
    return None


def _local_block_map(f: FiniteMap, inst: Instance, src: int, dst: int) -> FiniteMap:
    """f restricted to X_src as a map into X_dst, in local coordinates."""
    p = inst.partition
    source, target = p.blocks[src], p.blocks[dst]
    pos = {x: k for k, x in enumerate(target)}
    return FiniteMap(len(source), len(target), tuple(pos[f.images[x]] for x in source))


def unit_regular_witnesses(f: FiniteMap, inst: Instance) -> tuple[FiniteMap, ...]:
    """All index units alpha satisfying the four unit-regularity conditions."""
    if not inst.si.has_identity:
        raise PreconditionError("unit-regularity needs the identity character")
    require_member(f, inst)
    p = inst.partition
    chi = character(f, p)
    chi_image = set(chi.images)
    img = set(f.images)
    blk_img = [{f.images[x] for x in b} for b in p.blocks]
    sizes = [len(b) for b in p.blocks]
    witnesses = []
    for alpha in index_units(inst.si):
        if compose(compose(chi, alpha), chi) != chi:
            continue
        if any(sizes[i] != sizes[alpha.images[i]] for i in range(p.degree)):
            continue
        if not all(
            (p.block_sets[i] & img) <= blk_img[alpha.images[i]] for i in chi_image
        ):
            continue
        balanced = True
        for i in chi_image:
            j = alpha.images[i]
            c, d = collapse_defect(_local_block_map(f, inst, j, i))
            if c != d:
                balanced = False
                break
        if balanced:
            witnesses.append(alpha)
    return tuple(witnesses)


def build_unit_inverse(f: FiniteMap, alpha: FiniteMap, inst: Instance) -> FiniteMap:
    """A unit g with character alpha and f*g*f = f.

    On a block X_i hit by the character (with j = alpha(i)): image points of
    f|X_j return to their transversal preimage, and the points of X_i missed
    by f|X_j are matched order-preservingly with the non-transversal points
    of X_j.  Blocks outside the character image are mapped by the
    order-preserving bijection onto their target block.
    """
    if alpha not in unit_regular_witnesses(f, inst):
        raise PreconditionError(f"{alpha} is not a unit-regularity witness for {f}")
    p = inst.partition
    chi = character(f, p)
    chi_image = set(chi.images)
    images = [0] * p.n
    for i, b in enumerate(p.blocks):
        target = p.blocks[alpha.images[i]]
        if i in chi_image:
            # f maps `target` into `b`; split b into f(target) and the defect.
            transversal: dict[int, int] = {}
            for x in target:
                transversal.setdefault(f.images[x], x)
            collapsed = [x for x in target if x != transversal[f.images[x]]]
            defect = [x for x in b if x not in transversal]
            for x in b:
                if x in transversal:
                    images[x] = transversal[x]
            for x, y in zip(defect, collapsed):
                images[x] = y
        else:
            for k, x in enumerate(b):
                images[x] = target[k]
    g = FiniteMap(p.n, p.n, tuple(images))
    assert is_unit_bijection(g, p)
    assert character(g, p) == alpha
    assert compose(compose(f, g), f) == f
    return g


def is_unit_regular_semigroup(inst: Instance, mode: Mode = "theorem") -> bool:
    """Whole-semigroup unit-regularity, by exhaustion or the four conditions."""
    _check_mode(mode)
    if not inst.si.has_identity:
        raise PreconditionError("unit-regularity needs the identity character")
    if mode == "oracle":
        return all(
            is_unit_regular_oracle(f, inst) is not None
            for f in enumerate_elements(inst)
        )
    si_units = index_units(inst.si)
    if not all(
        any(compose(compose(a, u), a) == a for u in si_units) for a in inst.si.elements
    ):
        return False
    sizes = [len(b) for b in inst.partition.blocks]
    for alpha in si_units:
        if any(sizes[i] != sizes[alpha.images[i]] for i in range(inst.partition.degree)):
            return False
    # Finiteness of every block holds structurally for these carriers.
    for beta in inst.si.elements:
        fiber: dict[int, int] = {}
        for j in beta.images:
            fiber[j] = fiber.get(j, 0) + 1
        if any(count >= 2 and sizes[i] != 1 for i, count in fiber.items()):
            return False
    return True


def make_c_neq_d_map(size_x: int, size_y: int) -> FiniteMap:
    """A map between sets of different sizes whose collapse and defect differ."""
    if size_x < 1 or size_y < 1:
        raise InvalidArgumentError("both sizes must be at least 1")
    if size_x == size_y:
        raise PreconditionError(
            "between equal finite sets every map has equal collapse and defect"
        )
    if size_x < size_y:
        return FiniteMap(size_x, size_y, tuple(range(size_x)))
    images = tuple(min(x, size_y - 1) for x in range(size_x))
    return FiniteMap(size_x, size_y, images)


def fg_image_is_kernel_transversal(f: FiniteMap, g: FiniteMap) -> bool:
    """True iff the image of f*g meets every kernel class of f exactly once."""
    picked = set(image(compose(f, g)))
    return all(len(picked & set(c)) == 1 for c in kernel_partition(f).classes)
