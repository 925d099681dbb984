"""Green's relations via ideal oracles and via the character-level criteria.

The oracle route materializes the one- and two-sided principal-ideal
preorders from all products (boolean reachability matrices); the theorem
route searches for the character decorations (alpha, beta, gamma, delta),
class bijections and image maps demanded by the structural criteria.  Both
routes produce replayable witnesses: factor transformations whose composites
reproduce the claimed ideal memberships.

All operations here require the identity character in the index semigroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .errors import InvalidArgumentError, PreconditionError, ResourceLimitError
from .finite_maps import FiniteMap, compose, image, kernel_partition
from .ensemble import Instance, enumerate_elements, member_index, require_member
from .partition_action import Partition, character, preserves_partition

Relation = Literal["L", "R", "D", "J"]

DEFAULT_PAIR_CAP = 1_000_000  # (h1, h2) pairs scanned by the J factor search
DEFAULT_PHI_CAP = 1_000_000  # assignments tried by the phi searches

ClassPairing = tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


@dataclass(frozen=True)
class GreenWitness:
    """Replayable evidence for one relation verdict.

    ``factors`` hold the transformations that realize the ideal memberships:
    for L, ``fg`` satisfies f = fg * g; for R, f = g * fg; for J, the pair
    ``fg1``/``fg2`` satisfies f = fg1 * g * fg2 (and symmetrically for the
    ``gf`` names).  A D witness carries the middle element plus the four
    one-sided factors tying f to it and it to g.
    """

    relation: str
    index_maps: tuple[tuple[str, FiniteMap], ...] = ()
    factors: tuple[tuple[str, FiniteMap], ...] = ()
    class_pairing: ClassPairing | None = None
    image_maps: tuple[tuple[str, FiniteMap], ...] = ()

    def factor(self, name: str) -> FiniteMap:
        for key, value in self.factors:
            if key == name:
                return value
        raise KeyError(name)

    def index_map(self, name: str) -> FiniteMap:
        for key, value in self.index_maps:
            if key == name:
                return value
        raise KeyError(name)

    def image_map(self, name: str) -> FiniteMap:
        for key, value in self.image_maps:
            if key == name:
                return value
        raise KeyError(name)


def verify_witness(w: GreenWitness, f: FiniteMap, g: FiniteMap) -> bool:
    """Replay the factor equations of a witness."""
    try:
        if w.relation == "L":
            return compose(w.factor("fg"), g) == f and compose(w.factor("gf"), f) == g
        if w.relation == "R":
            return compose(g, w.factor("fg")) == f and compose(f, w.factor("gf")) == g
        if w.relation == "J":
            return (
                compose(compose(w.factor("fg1"), g), w.factor("fg2")) == f
                and compose(compose(w.factor("gf1"), f), w.factor("gf2")) == g
            )
        if w.relation == "D":
            m = w.factor("middle")
            return (
                compose(w.factor("l_fm"), m) == f
                and compose(w.factor("l_mf"), f) == m
                and compose(g, w.factor("r_mg")) == m
                and compose(m, w.factor("r_gm")) == g
            )
    except KeyError:
        return False
    raise InvalidArgumentError(f"unknown relation {w.relation!r}")


class _GreensData:
    """Per-instance precomputation shared by all relation checks."""

    def __init__(self, inst: Instance) -> None:
        if not inst.si.has_identity:
            raise PreconditionError("Green's relations need the identity character")
        self.inst = inst
        p = inst.partition
        self.members = enumerate_elements(inst)
        self.imgs = [m.images for m in self.members]
        self.index = member_index(inst)
        n = p.n
        size = len(self.members)
        rng = range(n)

        l_below = np.zeros((size, size), dtype=bool)
        r_below = np.zeros((size, size), dtype=bool)
        index = self.index
        for gi, gt in enumerate(self.imgs):
            for ht in self.imgs:
                l_below[index[tuple(gt[ht[x]] for x in rng)], gi] = True
                r_below[index[tuple(ht[gt[x]] for x in rng)], gi] = True
        self.l_below = l_below
        self.r_below = r_below
        self.j_below = (r_below.astype(np.uint8) @ l_below.astype(np.uint8)) > 0

        self.block_mask = [sum(1 << x for x in b) for b in p.blocks]
        lookup = [p.block_of(x) for x in rng]
        self.chars = [
            tuple(lookup[t[b[0]]] for b in p.blocks) for t in self.imgs
        ]
        self.blockimg_mask = [
            tuple(self._mask(t[x] for x in b) for b in p.blocks) for t in self.imgs
        ]
        self.img_mask = [self._mask(t) for t in self.imgs]
        self.kernels = [kernel_partition(m).classes for m in self.members]
        self.class_masks = [
            tuple(self._mask(c) for c in classes) for classes in self.kernels
        ]
        self.class_meets = [
            tuple(
                tuple(i for i, bm in enumerate(self.block_mask) if cm & bm)
                for cm in masks
            )
            for masks in self.class_masks
        ]

        self.si_imgs = [a.images for a in inst.si.elements]
        self.si_index = {t: k for k, t in enumerate(self.si_imgs)}
        deg = inst.si.degree
        si_size = len(self.si_imgs)
        si_l = np.zeros((si_size, si_size), dtype=bool)
        si_r = np.zeros((si_size, si_size), dtype=bool)
        for bi, bt in enumerate(self.si_imgs):
            for at in self.si_imgs:
                si_l[self.si_index[tuple(bt[at[i]] for i in range(deg))], bi] = True
                si_r[self.si_index[tuple(at[bt[i]] for i in range(deg))], bi] = True
        self.si_l_below = si_l
        self.si_r_below = si_r

    @staticmethod
    def _mask(values) -> int:
        m = 0
        for v in values:
            m |= 1 << v
        return m

    def member_id(self, f: FiniteMap) -> int:
        require_member(f, self.inst)
        return self.index[f.images]

    def l_eq(self, a: int, b: int) -> bool:
        return bool(self.l_below[a, b] and self.l_below[b, a])

    def r_eq(self, a: int, b: int) -> bool:
        return bool(self.r_below[a, b] and self.r_below[b, a])

    def si_r_eq(self, a: int, b: int) -> bool:
        return bool(self.si_r_below[a, b] and self.si_r_below[b, a])


@lru_cache(maxsize=None)
def _greens_data(inst: Instance) -> _GreensData:
    return _GreensData(inst)


def _check_mode(mode: str) -> None:
    if mode not in ("oracle", "theorem"):
        raise InvalidArgumentError(f"unknown mode {mode!r}")


def principal_leq_oracle(
    rel: Relation,
    f: FiniteMap,
    g: FiniteMap,
    inst: Instance,
    cap: int = DEFAULT_PAIR_CAP,
):
    """First factor(s) witnessing the principal-ideal inequality, if any.

    Returns h with f = h*g for L, h with f = g*h for R, and the pair
    (h1, h2) with f = h1*g*h2 for J; None when the inequality fails.
    """
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    target = data.imgs[fk]
    gt = data.imgs[gk]
    rng = range(len(target))
    if rel == "L":
        for k, ht in enumerate(data.imgs):
            if tuple(gt[ht[x]] for x in rng) == target:
                return data.members[k]
        return None
    if rel == "R":
        for k, ht in enumerate(data.imgs):
            if tuple(ht[gt[x]] for x in rng) == target:
                return data.members[k]
        return None
    if rel == "J":
        if not data.j_below[fk, gk]:
            return None
        tried = 0
        for k1, h1 in enumerate(data.imgs):
            mid = tuple(gt[h1[x]] for x in rng)
            for k2, h2 in enumerate(data.imgs):
                tried += 1
                if tried > cap:
                    raise ResourceLimitError(
                        f"J factor search exceeded the cap of {cap} pairs"
                    )
                if tuple(h2[y] for y in mid) == target:
                    return data.members[k1], data.members[k2]
        raise AssertionError("ideal membership held but no factor pair was found")
    raise InvalidArgumentError(f"unknown relation {rel!r}")


def _char_map(data: _GreensData, k: int) -> FiniteMap:
    deg = data.inst.si.degree
    return FiniteMap(deg, deg, data.chars[k])


def _l_one_sided_theorem(data: _GreensData, fk: int, gk: int) -> FiniteMap | None:
    """First alpha with chi(f) = alpha*chi(g) and X_i f inside X_{alpha(i)} g."""
    chi_f, chi_g = data.chars[fk], data.chars[gk]
    bf, bg = data.blockimg_mask[fk], data.blockimg_mask[gk]
    deg = data.inst.si.degree
    for at in data.si_imgs:
        if tuple(chi_g[at[i]] for i in range(deg)) != chi_f:
            continue
        if all(bf[i] & ~bg[at[i]] == 0 for i in range(deg)):
            return FiniteMap(deg, deg, at)
    return None


def l_related(
    f: FiniteMap,
    g: FiniteMap,
    inst: Instance,
    mode: str = "oracle",
    cap: int = DEFAULT_PHI_CAP,
) -> GreenWitness | None:
    _check_mode(mode)
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    if mode == "oracle":
        if not data.l_eq(fk, gk):
            return None
        h_fg = principal_leq_oracle("L", f, g, inst)
        h_gf = principal_leq_oracle("L", g, f, inst)
        p = inst.partition
        return GreenWitness(
            relation="L",
            index_maps=(("alpha", character(h_fg, p)), ("beta", character(h_gf, p))),
            factors=(("fg", h_fg), ("gf", h_gf)),
        )
    alpha = _l_one_sided_theorem(data, fk, gk)
    if alpha is None:
        return None
    beta = _l_one_sided_theorem(data, gk, fk)
    if beta is None:
        return None
    return GreenWitness(
        relation="L",
        index_maps=(("alpha", alpha), ("beta", beta)),
        factors=(
            ("fg", build_left_factor(f, g, alpha, inst)),
            ("gf", build_left_factor(g, f, beta, inst)),
        ),
    )


def build_left_factor(
    f: FiniteMap, g: FiniteMap, alpha: FiniteMap, inst: Instance
) -> FiniteMap:
    """The h with f = h*g and character alpha, choosing least solutions."""
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    if alpha.images not in data.si_index:
        raise PreconditionError(f"{alpha} is not in the index semigroup")
    p = inst.partition
    deg = p.degree
    chi_f, chi_g = data.chars[fk], data.chars[gk]
    at = alpha.images
    if tuple(chi_g[at[i]] for i in range(deg)) != chi_f or not all(
        data.blockimg_mask[fk][i] & ~data.blockimg_mask[gk][at[i]] == 0
        for i in range(deg)
    ):
        raise PreconditionError(f"{alpha} does not witness the L-inequality")
    images = [0] * p.n
    for i, b in enumerate(p.blocks):
        target = p.blocks[at[i]]
        for x in b:
            images[x] = next(y for y in target if g.images[y] == f.images[x])
    h = FiniteMap(p.n, p.n, tuple(images))
    assert compose(h, g) == f
    assert character(h, p) == alpha
    return h


def _r_one_sided_theorem(data: _GreensData, fk: int, gk: int) -> FiniteMap | None:
    """First beta with chi(f) = chi(g)*beta, provided pi(g) refines pi(f)."""
    if not all(
        any(cm & ~fm == 0 for fm in data.class_masks[fk]) for cm in data.class_masks[gk]
    ):
        return None
    chi_f, chi_g = data.chars[fk], data.chars[gk]
    deg = data.inst.si.degree
    for bt in data.si_imgs:
        if tuple(bt[chi_g[i]] for i in range(deg)) == chi_f:
            return FiniteMap(deg, deg, bt)
    return None


def r_related(
    f: FiniteMap,
    g: FiniteMap,
    inst: Instance,
    mode: str = "oracle",
    cap: int = DEFAULT_PHI_CAP,
) -> GreenWitness | None:
    _check_mode(mode)
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    if mode == "oracle":
        if not data.r_eq(fk, gk):
            return None
        h_fg = principal_leq_oracle("R", f, g, inst)
        h_gf = principal_leq_oracle("R", g, f, inst)
        p = inst.partition
        return GreenWitness(
            relation="R",
            index_maps=(
                ("beta_fg", character(h_fg, p)),
                ("beta_gf", character(h_gf, p)),
            ),
            factors=(("fg", h_fg), ("gf", h_gf)),
        )
    if data.kernels[fk] != data.kernels[gk]:
        return None
    beta_fg = _r_one_sided_theorem(data, fk, gk)
    if beta_fg is None:
        return None
    beta_gf = _r_one_sided_theorem(data, gk, fk)
    if beta_gf is None:
        return None
    return GreenWitness(
        relation="R",
        index_maps=(("beta_fg", beta_fg), ("beta_gf", beta_gf)),
        factors=(
            ("fg", build_right_factor(f, g, beta_fg, inst)),
            ("gf", build_right_factor(g, f, beta_gf, inst)),
        ),
    )


def build_right_factor(
    f: FiniteMap, g: FiniteMap, beta: FiniteMap, inst: Instance
) -> FiniteMap:
    """The h with f = g*h and character beta, using least preimages."""
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    if beta.images not in data.si_index:
        raise PreconditionError(f"{beta} is not in the index semigroup")
    p = inst.partition
    deg = p.degree
    bt = beta.images
    chi_f, chi_g = data.chars[fk], data.chars[gk]
    refine_ok = all(
        any(cm & ~fm == 0 for fm in data.class_masks[fk]) for cm in data.class_masks[gk]
    )
    if tuple(bt[chi_g[i]] for i in range(deg)) != chi_f or not refine_ok:
        raise PreconditionError(f"{beta} does not witness the R-inequality")
    least_preimage: dict[int, int] = {}
    for x in range(p.n):
        least_preimage.setdefault(g.images[x], x)
    images = [0] * p.n
    for i, b in enumerate(p.blocks):
        basepoint = p.blocks[bt[i]][0]
        for x in b:
            if x in least_preimage:
                images[x] = f.images[least_preimage[x]]
            else:
                images[x] = basepoint
    h = FiniteMap(p.n, p.n, tuple(images))
    assert compose(g, h) == f
    assert character(h, p) == beta
    return h


def _match_classes(
    data: _GreensData,
    fk: int,
    gk: int,
    at: tuple[int, ...],
    bt: tuple[int, ...],
    budget: list[int],
) -> tuple[int, ...] | None:
    """Backtracking search for a compatible bijection between kernel classes.

    Returns, for each class of pi(f), the index of its partner in pi(g);
    decrements the shared assignment budget and raises when it runs out.
    """
    f_meets = data.class_meets[fk]
    g_masks = data.class_masks[gk]
    g_meets = data.class_meets[gk]
    f_masks = data.class_masks[fk]
    block_mask = data.block_mask
    count = len(f_masks)
    compat = [
        [
            nk
            for nk in range(count)
            if all(g_masks[nk] & block_mask[at[i]] for i in f_meets[mk])
            and all(f_masks[mk] & block_mask[bt[i]] for i in g_meets[nk])
        ]
        for mk in range(count)
    ]
    assignment = [-1] * count
    used = [False] * count

    def extend(mk: int) -> bool:
        if mk == count:
            return True
        for nk in compat[mk]:
            if used[nk]:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceLimitError("class-bijection search exceeded its cap")
            assignment[mk] = nk
            used[nk] = True
            if extend(mk + 1):
                return True
            used[nk] = False
        assignment[mk] = -1
        return False

    if extend(0):
        return tuple(assignment)
    return None


def _d_theorem_search(
    data: _GreensData, fk: int, gk: int, cap: int
) -> tuple[FiniteMap, FiniteMap, FiniteMap, ClassPairing] | None:
    if len(data.kernels[fk]) != len(data.kernels[gk]):
        return None
    deg = data.inst.si.degree
    chi_f = data.chars[fk]
    chi_g_idx = data.si_index[data.chars[gk]]
    budget = [cap]
    for ck, ct in enumerate(data.si_imgs):
        if not data.si_r_eq(ck, chi_g_idx):
            continue
        alphas = [
            at for at in data.si_imgs if tuple(ct[at[i]] for i in range(deg)) == chi_f
        ]
        if not alphas:
            continue
        betas = [
            bt for bt in data.si_imgs if tuple(chi_f[bt[i]] for i in range(deg)) == ct
        ]
        for at in alphas:
            for bt in betas:
                found = _match_classes(data, fk, gk, at, bt, budget)
                if found is not None:
                    pairing = tuple(
                        (data.kernels[fk][mk], data.kernels[gk][nk])
                        for mk, nk in enumerate(found)
                    )
                    return (
                        FiniteMap(deg, deg, at),
                        FiniteMap(deg, deg, bt),
                        FiniteMap(deg, deg, ct),
                        pairing,
                    )
    return None


def _first_right_divisor(data: _GreensData, chi_from: tuple, chi_to: tuple) -> FiniteMap:
    """First u in the index set with chi_to = chi_from * u."""
    deg = data.inst.si.degree
    for ut in data.si_imgs:
        if tuple(ut[chi_from[i]] for i in range(deg)) == chi_to:
            return FiniteMap(deg, deg, ut)
    raise AssertionError("R-divisibility promised by the search but not found")


def _oracle_d_pairing(data: _GreensData, fk: int, mk: int) -> ClassPairing:
    """Pair each kernel class of f with the class of the middle sharing its value."""
    f_imgs = data.imgs[fk]
    m_imgs = data.imgs[mk]
    by_value = {m_imgs[c[0]]: c for c in data.kernels[mk]}
    return tuple((c, by_value[f_imgs[c[0]]]) for c in data.kernels[fk])


def d_related(
    f: FiniteMap,
    g: FiniteMap,
    inst: Instance,
    mode: str = "oracle",
    cap: int = DEFAULT_PHI_CAP,
) -> GreenWitness | None:
    """D-relatedness: L-compose-R with a middle element, or the structural search."""
    _check_mode(mode)
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    p = inst.partition
    if mode == "oracle":
        l_eq_f = data.l_below[fk, :] & data.l_below[:, fk]
        r_eq_g = data.r_below[gk, :] & data.r_below[:, gk]
        hits = np.nonzero(l_eq_f & r_eq_g)[0]
        if len(hits) == 0:
            return None
        mk = int(hits[0])
        m = data.members[mk]
        return GreenWitness(
            relation="D",
            index_maps=(("gamma", _char_map(data, mk)),),
            factors=(
                ("middle", m),
                ("l_fm", principal_leq_oracle("L", f, m, inst)),
                ("l_mf", principal_leq_oracle("L", m, f, inst)),
                ("r_mg", principal_leq_oracle("R", m, g, inst)),
                ("r_gm", principal_leq_oracle("R", g, m, inst)),
            ),
            class_pairing=_oracle_d_pairing(data, fk, mk),
        )
    found = _d_theorem_search(data, fk, gk, cap)
    if found is None:
        return None
    alpha, beta, gamma, pairing = found
    m = build_d_middle(f, g, gamma, pairing, inst)
    mk = data.member_id(m)
    u = _first_right_divisor(data, data.chars[gk], data.chars[mk])
    v = _first_right_divisor(data, data.chars[mk], data.chars[gk])
    return GreenWitness(
        relation="D",
        index_maps=(("alpha", alpha), ("beta", beta), ("gamma", gamma)),
        factors=(
            ("middle", m),
            ("l_fm", build_left_factor(f, m, alpha, inst)),
            ("l_mf", build_left_factor(m, f, beta, inst)),
            ("r_mg", build_right_factor(m, g, u, inst)),
            ("r_gm", build_right_factor(g, m, v, inst)),
        ),
        class_pairing=pairing,
    )


def build_d_middle(
    f: FiniteMap,
    g: FiniteMap,
    gamma: FiniteMap,
    phi: ClassPairing,
    inst: Instance,
) -> FiniteMap:
    """The middle element: constant on pi(g)-classes, valued by the paired f-class."""
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    if tuple(sorted(m for m, _ in phi)) != tuple(sorted(data.kernels[fk])) or tuple(
        sorted(n for _, n in phi)
    ) != tuple(sorted(data.kernels[gk])):
        raise PreconditionError("phi is not a bijection between the kernel classes")
    p = inst.partition
    images = [0] * p.n
    for m_class, g_class in phi:
        value = f.images[m_class[0]]
        for x in g_class:
            images[x] = value
    h = FiniteMap(p.n, p.n, tuple(images))
    if not preserves_partition(h, p) or character(h, p) != gamma:
        raise PreconditionError("the given gamma and phi do not satisfy the D-criteria")
    if h.images not in data.index:
        raise PreconditionError("the constructed middle element is not a member")
    assert kernel_partition(h) == kernel_partition(g)
    return h


def _j_one_sided_theorem(
    data: _GreensData, fk: int, gk: int, cap: int, budget: list[int]
) -> tuple[FiniteMap, FiniteMap, FiniteMap] | None:
    """Search (alpha, beta, phi) making J_f <= J_g per the structural criterion.

    phi is returned as a map on the sorted image of g.  Candidate pairs are
    pruned by the necessary identity chi(f) = alpha*chi(g)*beta; for each
    pair the point values of phi are enumerated blockwise.
    """
    p = data.inst.partition
    deg = p.degree
    chi_f, chi_g = data.chars[fk], data.chars[gk]
    g_imgs = data.imgs[gk]
    dom = sorted(set(g_imgs))
    dom_pos = {v: k for k, v in enumerate(dom)}
    f_blockimg = data.blockimg_mask[fk]
    for at in data.si_imgs:
        mid = tuple(chi_g[at[i]] for i in range(deg))
        # positions (in dom) of the g-image of X_{alpha(i)}, per i
        sources = [
            tuple(sorted({dom_pos[g_imgs[x]] for x in p.blocks[at[i]]}))
            for i in range(deg)
        ]
        for bt in data.si_imgs:
            if tuple(bt[mid[i]] for i in range(deg)) != chi_f:
                continue
            candidates = [p.blocks[bt[p.block_of(z)]] for z in dom]
            for values in itertools.product(*candidates):
                budget[0] -= 1
                if budget[0] < 0:
                    raise ResourceLimitError(
                        f"phi search exceeded the cap of {cap} assignments"
                    )
                ok = True
                for i in range(deg):
                    covered = data._mask(values[k] for k in sources[i])
                    if f_blockimg[i] & ~covered:
                        ok = False
                        break
                if ok:
                    return (
                        FiniteMap(deg, deg, at),
                        FiniteMap(deg, deg, bt),
                        FiniteMap(len(dom), p.n, values),
                    )
    return None


def j_related(
    f: FiniteMap,
    g: FiniteMap,
    inst: Instance,
    mode: str = "oracle",
    cap: int = DEFAULT_PHI_CAP,
) -> GreenWitness | None:
    _check_mode(mode)
    data = _greens_data(inst)
    fk, gk = data.member_id(f), data.member_id(g)
    p = inst.partition
    if mode == "oracle":
        if not (data.j_below[fk, gk] and data.j_below[gk, fk]):
            return None
        h1, h2 = principal_leq_oracle("J", f, g, inst)
        k1, k2 = principal_leq_oracle("J", g, f, inst)
        return GreenWitness(
            relation="J",
            index_maps=(
                ("alpha", character(h1, p)),
                ("beta", character(h2, p)),
                ("gamma", character(k1, p)),
                ("delta", character(k2, p)),
            ),
            factors=(("fg1", h1), ("fg2", h2), ("gf1", k1), ("gf2", k2)),
            image_maps=(
                ("phi", _image_map_from_factors(f, g, h1, h2, inst)),
                ("psi", _image_map_from_factors(g, f, k1, k2, inst)),
            ),
        )
    budget = [cap]
    forward = _j_one_sided_theorem(data, fk, gk, cap, budget)
    if forward is None:
        return None
    backward = _j_one_sided_theorem(data, gk, fk, cap, budget)
    if backward is None:
        return None
    alpha, beta, phi = forward
    gamma, delta, psi = backward
    h1, h2 = build_j_factors(f, g, alpha, beta, phi, inst)
    k1, k2 = build_j_factors(g, f, gamma, delta, psi, inst)
    return GreenWitness(
        relation="J",
        index_maps=(
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("delta", delta),
        ),
        factors=(("fg1", h1), ("fg2", h2), ("gf1", k1), ("gf2", k2)),
        image_maps=(("phi", phi), ("psi", psi)),
    )


def _image_map_from_factors(
    f: FiniteMap,
    g: FiniteMap,
    h1: FiniteMap,
    h2: FiniteMap,
    inst: Instance,
) -> FiniteMap:
    """Recover the image map on Xg from a factorization f = h1*g*h2.

    Points reached through h1*g are pushed through h2; stranded points of Xg
    follow a reached point of their own block when one exists, and otherwise
    drop to the basepoint of their block's target under the character of h2.
    """
    p = inst.partition
    beta = character(h2, p)
    dom = sorted(set(g.images))
    reached = {compose(h1, g).images[x] for x in range(p.n)}
    values = []
    for x in dom:
        if x in reached:
            values.append(h2.images[x])
            continue
        i = p.block_of(x)
        fellow = [y for y in p.blocks[i] if y in reached]
        if fellow:
            values.append(h2.images[fellow[0]])
        else:
            values.append(p.blocks[beta.images[i]][0])
    return FiniteMap(len(dom), p.n, tuple(values))


def build_j_factors(
    f: FiniteMap,
    g: FiniteMap,
    alpha: FiniteMap,
    beta: FiniteMap,
    phi: FiniteMap,
    inst: Instance,
) -> tuple[FiniteMap, FiniteMap]:
    """The pair (h1, h2) with f = h1*g*h2 derived from an image map phi on Xg."""
    data = _greens_data(inst)
    data.member_id(f), data.member_id(g)
    p = inst.partition
    if alpha.images not in data.si_index or beta.images not in data.si_index:
        raise PreconditionError("alpha and beta must lie in the index semigroup")
    dom = sorted(set(g.images))
    if phi.domain_size != len(dom) or phi.codomain_size != p.n:
        raise PreconditionError("phi must map the image of g into X")
    dom_pos = {v: k for k, v in enumerate(dom)}
    gphi = {y: phi.images[dom_pos[g.images[y]]] for y in range(p.n)}
    chi_g = character(g, p)
    for i, b in enumerate(p.blocks):
        covered = {gphi[y] for y in p.blocks[alpha.images[i]]}
        if not {f.images[x] for x in b} <= covered:
            raise PreconditionError("phi does not cover the block images of f")
    for i in set(chi_g.images):
        hit = {phi.images[dom_pos[x]] for x in p.blocks[i] if x in dom_pos}
        if not hit <= set(p.blocks[beta.images[i]]):
            raise PreconditionError("phi is not block-constant toward beta")
    h1_images = [0] * p.n
    for i, b in enumerate(p.blocks):
        target = p.blocks[alpha.images[i]]
        for x in b:
            h1_images[x] = next(y for y in target if gphi[y] == f.images[x])
    h1 = FiniteMap(p.n, p.n, tuple(h1_images))
    chi_g_image = set(chi_g.images)
    h2_images = [0] * p.n
    for i, b in enumerate(p.blocks):
        basepoint = p.blocks[beta.images[i]][0]
        for x in b:
            if i in chi_g_image and x in dom_pos:
                h2_images[x] = phi.images[dom_pos[x]]
            else:
                h2_images[x] = basepoint
    h2 = FiniteMap(p.n, p.n, tuple(h2_images))
    assert compose(compose(h1, g), h2) == f
    assert character(h1, p) == alpha
    assert character(h2, p) == beta
    return h1, h2


def _txp_l_one_sided(f: FiniteMap, g: FiniteMap, p: Partition) -> bool:
    fb = [{f.images[x] for x in b} for b in p.blocks]
    gb = [{g.images[x] for x in b} for b in p.blocks]
    return all(any(fb[i] <= gb[j] for j in range(p.degree)) for i in range(p.degree))


def _txp_d_check(f: FiniteMap, g: FiniteMap, p: Partition) -> bool:
    fc = kernel_partition(f).classes
    gc = kernel_partition(g).classes
    if len(fc) != len(gc):
        return False
    chi_f = character(f, p).images
    chi_g = character(g, p).images
    deg = p.degree
    # gamma must be L-related to chi(f) and R-related to chi(g) in the full
    # index monoid: same image set as chi(f), same kernel as chi(g).
    target_image = sorted(set(chi_f))
    g_fibers = kernel_partition(FiniteMap(deg, deg, chi_g)).classes
    if len(g_fibers) != len(target_image):
        return False
    blocksets = [set(b) for b in p.blocks]
    f_meets = [
        {i for i in range(deg) if blocksets[i] & set(c)} for c in fc
    ]
    g_meets = [
        {i for i in range(deg) if blocksets[i] & set(c)} for c in gc
    ]
    for assigned in itertools.permutations(target_image):
        gamma = [0] * deg
        for fiber, value in zip(g_fibers, assigned):
            for i in fiber:
                gamma[i] = value
        for matching in itertools.permutations(range(len(gc))):
            ok = True
            for i in range(deg):
                f_here = [k for k in range(len(fc)) if i in f_meets[k]]
                g_here = [k for k in range(len(gc)) if i in g_meets[k]]
                if not any(
                    gamma[j] == chi_f[i]
                    and all(j in g_meets[matching[k]] for k in f_here)
                    for j in range(deg)
                ):
                    ok = False
                    break
                inverse = {matching[k]: k for k in range(len(fc))}
                if not any(
                    chi_f[k2] == gamma[i]
                    and all(k2 in f_meets[inverse[k]] for k in g_here)
                    for k2 in range(deg)
                ):
                    ok = False
                    break
            if ok:
                return True
    return False


def _txp_j_one_sided(f: FiniteMap, g: FiniteMap, p: Partition) -> bool:
    """Is there an E-preserving phi on Xg with every X_i f covered by some (X_j g)phi?"""
    dom = sorted(set(g.images))
    hit_blocks = sorted({p.block_of(x) for x in dom})
    positions = {v: k for k, v in enumerate(dom)}
    fb = [{f.images[x] for x in b} for b in p.blocks]
    gb = [{g.images[x] for x in b} for b in p.blocks]
    for targets in itertools.product(range(p.degree), repeat=len(hit_blocks)):
        target_of = dict(zip(hit_blocks, targets))
        candidates = [p.blocks[target_of[p.block_of(z)]] for z in dom]
        for values in itertools.product(*candidates):
            covered = [
                {values[positions[v]] for v in gb[j]} for j in range(p.degree)
            ]
            if all(
                any(fb[i] <= covered[j] for j in range(p.degree))
                for i in range(p.degree)
            ):
                return True
    return False


def txp_green(rel: Relation, f: FiniteMap, g: FiniteMap, p: Partition) -> bool:
    """The specialized Green's criteria for the full character set T(I)."""
    if not preserves_partition(f, p) or not preserves_partition(g, p):
        raise InvalidArgumentError("both maps must preserve the partition")
    if rel == "L":
        return _txp_l_one_sided(f, g, p) and _txp_l_one_sided(g, f, p)
    if rel == "R":
        chi_f, chi_g = character(f, p), character(g, p)
        return (
            kernel_partition(chi_f) == kernel_partition(chi_g)
            and kernel_partition(f) == kernel_partition(g)
        )
    if rel == "D":
        return _txp_d_check(f, g, p)
    if rel == "J":
        return _txp_j_one_sided(f, g, p) and _txp_j_one_sided(g, f, p)
    raise InvalidArgumentError(f"unknown relation {rel!r}")


def full_tx_green(rel: Relation, f: FiniteMap, g: FiniteMap) -> bool:
    """Green's relations on the full transformation semigroup (one block)."""
    if f.domain_size != g.domain_size or not f.is_endomap() or not g.is_endomap():
        raise InvalidArgumentError("expected endomaps of one common set")
    if rel == "L":
        return image(f) == image(g)
    if rel == "R":
        return kernel_partition(f) == kernel_partition(g)
    if rel in ("D", "J"):
        return len(image(f)) == len(image(g))
    raise InvalidArgumentError(f"unknown relation {rel!r}")


def eggbox(inst: Instance) -> list[dict]:
    """D-classes as grids of R-classes (rows) by L-classes (columns).

    Each grid cell lists the member ids sharing that L- and R-class.
    """
    data = _greens_data(inst)
    size = len(data.members)
    l_eq = data.l_below & data.l_below.T
    r_eq = data.r_below & data.r_below.T
    l_label = [int(np.nonzero(l_eq[k])[0][0]) for k in range(size)]
    r_label = [int(np.nonzero(r_eq[k])[0][0]) for k in range(size)]
    parent = list(range(size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    by_l: dict[int, int] = {}
    by_r: dict[int, int] = {}
    for k in range(size):
        if l_label[k] in by_l:
            union(k, by_l[l_label[k]])
        else:
            by_l[l_label[k]] = k
        if r_label[k] in by_r:
            union(k, by_r[r_label[k]])
        else:
            by_r[r_label[k]] = k
    d_members: dict[int, list[int]] = {}
    for k in range(size):
        d_members.setdefault(find(k), []).append(k)
    boxes = []
    for root in sorted(d_members):
        ks = d_members[root]
        rows = sorted({r_label[k] for k in ks})
        cols = sorted({l_label[k] for k in ks})
        grid = [
            [
                [k for k in ks if r_label[k] == row and l_label[k] == col]
                for col in cols
            ]
            for row in rows
        ]
        boxes.append(
            {
                "representative": root,
                "r_classes": rows,
                "l_classes": cols,
                "grid": grid,
            }
        )
    return boxes
