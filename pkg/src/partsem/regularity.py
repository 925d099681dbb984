"""Regular elements, idempotents and the regular/inverse semigroup tests.

Every decision procedure exists twice: a brute-force oracle straight from the
definition, and the structural characterization in terms of the character and
the block geometry.  The two are kept strictly separate so the harness can
compare them.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Literal

from .errors import InvalidArgumentError, PreconditionError
from .finite_maps import FiniteMap, compose, image, is_idempotent_def
from .ensemble import (
    Instance,
    IndexSemigroup,
    enumerate_elements,
    require_member,
)
from .partition_action import block_maps, character

Mode = Literal["oracle", "theorem"]


def _check_mode(mode: str) -> None:
    if mode not in ("oracle", "theorem"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")


def is_regular_oracle(f: FiniteMap, inst: Instance) -> FiniteMap | None:
    """First g in enumeration order with f*g*f = f, if any."""
    require_member(f, inst)
    for g in enumerate_elements(inst):
        if compose(compose(f, g), f) == f:
            return g
    return None


def _block_images(f: FiniteMap, inst: Instance) -> list[set[int]]:
    return [{f.images[x] for x in b} for b in inst.partition.blocks]


def regular_character_witnesses(f: FiniteMap, inst: Instance) -> tuple[FiniteMap, ...]:
    """All alpha in the index set making f regular, in element order.

    alpha qualifies when chi(f)*alpha*chi(f) = chi(f) and, for every block
    index i hit by chi(f), X_i intersected with the image of f sits inside
    the f-image of X_{alpha(i)}.
    """
    require_member(f, inst)
    p = inst.partition
    chi = character(f, p)
    chi_image = set(chi.images)
    img = set(f.images)
    blk_img = _block_images(f, inst)
    witnesses = []
    for alpha in inst.si.elements:
        if compose(compose(chi, alpha), chi) != chi:
            continue
        ok = all(
            (p.block_sets[i] & img) <= blk_img[alpha.images[i]]
            for i in chi_image
        )
        if ok:
            witnesses.append(alpha)
    return tuple(witnesses)


def build_inner_inverse(f: FiniteMap, alpha: FiniteMap, inst: Instance) -> FiniteMap:
    """The canonical inner inverse with character alpha.

    Image points go to their least preimage inside the designated block;
    everything else goes to block basepoints (block minima).
    """
    if alpha not in regular_character_witnesses(f, inst):
        raise PreconditionError(f"{alpha} is not a regular-character witness for {f}")
    p = inst.partition
    chi = character(f, p)
    chi_image = set(chi.images)
    img = set(f.images)
    images = [0] * p.n
    for i, b in enumerate(p.blocks):
        target = p.blocks[alpha.images[i]]
        if i in chi_image:
            for x in b:
                if x in img:
                    images[x] = next(x2 for x2 in target if f.images[x2] == x)
                else:
                    images[x] = target[0]
        else:
            for x in b:
                images[x] = target[0]
    g = FiniteMap(p.n, p.n, tuple(images))
    assert compose(compose(f, g), f) == f
    assert character(g, p) == alpha
    return g


@lru_cache(maxsize=None)
def si_is_regular(si: IndexSemigroup) -> bool:
    """Brute-force regularity of the index semigroup."""
    return all(
        any(compose(compose(a, b), a) == a for b in si.elements)
        for a in si.elements
    )


@lru_cache(maxsize=None)
def si_is_inverse(si: IndexSemigroup) -> bool:
    """Brute force: every element has exactly one mutual inner inverse."""
    for a in si.elements:
        partners = [
            b
            for b in si.elements
            if compose(compose(a, b), a) == a and compose(compose(b, a), b) == b
        ]
        if len(partners) != 1:
            return False
    return True


def is_regular_semigroup(inst: Instance, mode: Mode = "theorem") -> bool:
    """Whole-semigroup regularity, by exhaustion or by the two structural conditions."""
    _check_mode(mode)
    if mode == "oracle":
        return all(is_regular_oracle(f, inst) is not None for f in enumerate_elements(inst))
    if not si_is_regular(inst.si):
        return False
    sizes = [len(b) for b in inst.partition.blocks]
    for alpha in inst.si.elements:
        fiber: dict[int, int] = {}
        for j in alpha.images:
            fiber[j] = fiber.get(j, 0) + 1
        if any(count >= 2 and sizes[i] != 1 for i, count in fiber.items()):
            return False
    return True


def idempotents(inst: Instance) -> tuple[FiniteMap, ...]:
    return tuple(f for f in enumerate_elements(inst) if compose(f, f) == f)


def is_idempotent_characterized(f: FiniteMap, inst: Instance) -> bool:
    """Idempotency via the character and block restrictions, not via f*f."""
    require_member(f, inst)
    p = inst.partition
    chi = character(f, p)
    if compose(chi, chi) != chi:
        return False
    chi_image = set(chi.images)
    bd = block_maps(f, p)
    for i in chi_image:
        entry = bd.entries[i]
        if entry.target_block != i or not is_idempotent_def(entry.local_map):
            return False
    blk_img = _block_images(f, inst)
    for i in range(p.degree):
        if i not in chi_image and not blk_img[i] <= blk_img[chi.images[i]]:
            return False
    return True


def is_inverse_semigroup(inst: Instance, mode: Mode = "theorem") -> bool:
    """Inverse-semigroup test: oracle uses commuting idempotents, theorem the index conditions."""
    _check_mode(mode)
    if mode == "oracle":
        if not is_regular_semigroup(inst, "oracle"):
            return False
        es = idempotents(inst)
        return all(compose(e, w) == compose(w, e) for e in es for w in es)
    if not si_is_inverse(inst.si):
        return False
    sizes = [len(b) for b in inst.partition.blocks]
    for alpha in inst.si.elements:
        if compose(alpha, alpha) != alpha:
            continue
        if any(sizes[i] != 1 for i in set(alpha.images)):
            return False
    return True
