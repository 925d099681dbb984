import random

import pytest

from partsem import (
    FiniteMap,
    GreenWitness,
    IndexSemigroup,
    Instance,
    InvalidArgumentError,
    Partition,
    PreconditionError,
    build_d_middle,
    build_j_factors,
    build_left_factor,
    build_right_factor,
    character,
    compose,
    d_related,
    eggbox,
    enumerate_elements,
    full_tx_green,
    j_related,
    kernel_partition,
    l_related,
    lift_character,
    principal_leq_oracle,
    r_related,
    txp_green,
    verify_witness,
)
from conftest import comp


def fm(images):
    return FiniteMap.of(images)


E1 = fm([0, 0, 2, 2])
E2 = fm([1, 1, 3, 3])
E3 = fm([2, 2, 0, 0])
F1 = fm([2, 3, 0, 0])
CONST = fm([0, 0, 0, 0])


class TestPrincipalLeqOracle:
    def test_l_factor_absent_when_images_disagree(self, inst_full):
        # e2 = h*e1 has no solution: the images {1,3} and {0,2} are disjoint
        assert principal_leq_oracle("L", E2, E1, inst_full) is None
        assert principal_leq_oracle("L", E1, E2, inst_full) is None

    def test_r_factor_for_equal_elements_is_first_in_order(self, inst_full):
        h = principal_leq_oracle("R", F1, F1, inst_full)
        members = [m.images for m in enumerate_elements(inst_full)]
        first = next(
            m for m in members if comp(F1.images, m) == F1.images
        )
        assert h.images == first
        assert compose(F1, h) == F1
        # the identity is also a valid (later) factor
        assert compose(F1, FiniteMap.identity(4)) == F1

    def test_j_factors_for_rank_collapse(self, inst_full):
        pair = principal_leq_oracle("J", CONST, FiniteMap.identity(4), inst_full)
        assert pair is not None
        h1, h2 = pair
        assert compose(compose(h1, FiniteMap.identity(4)), h2) == CONST
        assert principal_leq_oracle("J", FiniteMap.identity(4), CONST, inst_full) is None

    def test_requires_identity_character(self, p22):
        inst = Instance(p22, IndexSemigroup(2, (fm([0, 0]),)))
        with pytest.raises(PreconditionError):
            principal_leq_oracle("L", fm([0, 0, 0, 0]), fm([0, 0, 0, 0]), inst)

    def test_rejects_non_members(self, inst_full):
        with pytest.raises(InvalidArgumentError):
            principal_leq_oracle("L", fm([2, 3, 3, 0]), E1, inst_full)


class TestLRelated:
    def test_reflexive_with_identity_decorations(self, inst_full):
        w = l_related(F1, F1, inst_full, mode="theorem")
        assert w is not None
        assert w.index_map("alpha") == FiniteMap.identity(2)
        assert w.index_map("beta") == FiniteMap.identity(2)
        assert verify_witness(w, F1, F1)

    def test_not_related_when_images_differ(self, inst_full):
        assert l_related(F1, E1, inst_full, mode="oracle") is None
        assert l_related(F1, E1, inst_full, mode="theorem") is None
        assert l_related(E1, E2, inst_full, mode="oracle") is None
        assert l_related(E1, E2, inst_full, mode="theorem") is None

    def test_modes_agree_on_all_pairs(self, inst_sym):
        members = enumerate_elements(inst_sym)
        for f in members:
            for g in members:
                o = l_related(f, g, inst_sym, mode="oracle")
                t = l_related(f, g, inst_sym, mode="theorem")
                assert (o is None) == (t is None)
                if o is not None:
                    assert verify_witness(o, f, g) and verify_witness(t, f, g)


class TestBuildLeftFactor:
    def test_reflexive_rule(self, inst_full):
        h = build_left_factor(F1, F1, FiniteMap.identity(2), inst_full)
        assert compose(h, F1) == F1

    def test_identity_right_leg_forces_f(self, inst_full):
        f = lift_character(fm([1, 0]), inst_full.partition)
        h = build_left_factor(f, FiniteMap.identity(4), fm([1, 0]), inst_full)
        assert h == f

    def test_rejects_bad_alpha(self, inst_full):
        with pytest.raises(PreconditionError):
            build_left_factor(F1, E1, FiniteMap.identity(2), inst_full)


class TestRRelated:
    def test_equal_kernels_same_character(self, inst_full):
        for mode in ("oracle", "theorem"):
            w = r_related(E1, E2, inst_full, mode=mode)
            assert w is not None and verify_witness(w, E1, E2)

    def test_reflexive(self, inst_full):
        w = r_related(F1, F1, inst_full, mode="theorem")
        assert w is not None and verify_witness(w, F1, F1)

    def test_kernel_mismatch(self, inst_full):
        assert r_related(F1, E1, inst_full, mode="oracle") is None
        assert r_related(F1, E1, inst_full, mode="theorem") is None

    def test_related_pairs_share_kernels(self, inst_full):
        members = enumerate_elements(inst_full)
        rng = random.Random(7)
        for _ in range(60):
            f = members[rng.randrange(len(members))]
            g = members[rng.randrange(len(members))]
            w = r_related(f, g, inst_full, mode="oracle")
            if w is not None:
                assert kernel_partition(f) == kernel_partition(g)


class TestBuildRightFactor:
    def test_worked_example(self, inst_full):
        h = build_right_factor(E1, E2, FiniteMap.identity(2), inst_full)
        assert h == fm([0, 0, 2, 2])
        assert compose(E2, h) == E1

    def test_reflexive_rule(self, inst_full):
        h = build_right_factor(F1, F1, FiniteMap.identity(2), inst_full)
        assert compose(F1, h) == F1

    def test_rejects_bad_beta(self, inst_full):
        with pytest.raises(PreconditionError):
            build_right_factor(F1, E1, FiniteMap.identity(2), inst_full)


class TestDRelated:
    def test_reflexive(self, inst_full):
        for mode in ("oracle", "theorem"):
            w = d_related(F1, F1, inst_full, mode=mode)
            assert w is not None and verify_witness(w, F1, F1)

    def test_class_count_mismatch(self, inst_full):
        assert d_related(E1, F1, inst_full, mode="oracle") is None
        assert d_related(E1, F1, inst_full, mode="theorem") is None

    def test_idempotent_pair_related(self, inst_full):
        for mode in ("oracle", "theorem"):
            w = d_related(E1, E3, inst_full, mode=mode)
            assert w is not None and verify_witness(w, E1, E3)
            m = w.factor("middle")
            assert kernel_partition(m) == kernel_partition(E3)

    def test_oracle_pairing_follows_shared_values(self, inst_full):
        w = d_related(E1, E3, inst_full, mode="oracle")
        m = w.factor("middle")
        for f_class, g_class in w.class_pairing:
            assert E1.images[f_class[0]] == m.images[g_class[0]]

    def test_modes_agree_on_all_pairs(self, inst_sym):
        members = enumerate_elements(inst_sym)
        for f in members:
            for g in members:
                o = d_related(f, g, inst_sym, mode="oracle")
                t = d_related(f, g, inst_sym, mode="theorem")
                assert (o is None) == (t is None)


class TestBuildDMiddle:
    def test_identity_pairing_returns_f(self, inst_full):
        pairing = tuple((c, c) for c in kernel_partition(F1).classes)
        h = build_d_middle(F1, F1, character(F1, inst_full.partition), pairing, inst_full)
        assert h == F1

    def test_rejects_malformed_pairing(self, inst_full):
        pairing = tuple((c, c) for c in kernel_partition(F1).classes)
        with pytest.raises(PreconditionError):
            build_d_middle(F1, E1, FiniteMap.identity(2), pairing, inst_full)

    def test_rejects_wrong_gamma(self, inst_full):
        pairing = tuple((c, c) for c in kernel_partition(F1).classes)
        with pytest.raises(PreconditionError):
            build_d_middle(F1, F1, fm([0, 0]), pairing, inst_full)


class TestJRelated:
    def test_reflexive(self, inst_full):
        for mode in ("oracle", "theorem"):
            w = j_related(F1, F1, inst_full, mode=mode)
            assert w is not None and verify_witness(w, F1, F1)

    def test_rank_obstruction(self, inst_full):
        ident = FiniteMap.identity(4)
        for mode in ("oracle", "theorem"):
            assert j_related(CONST, ident, inst_full, mode=mode) is None

    def test_idempotent_pair(self, inst_full):
        o = j_related(E1, E3, inst_full, mode="oracle")
        t = j_related(E1, E3, inst_full, mode="theorem")
        assert (o is None) == (t is None)
        if o is not None:
            assert verify_witness(o, E1, E3) and verify_witness(t, E1, E3)

    def test_oracle_witness_image_maps_satisfy_the_criteria(self, inst_full):
        w = j_related(E1, E3, inst_full, mode="oracle")
        if w is None:
            pytest.skip("pair not J-related")
        p = inst_full.partition
        phi = w.image_map("phi")
        dom = sorted(set(E3.images))
        pos = {v: k for k, v in enumerate(dom)}
        alpha = w.index_map("alpha")
        for i, b in enumerate(p.blocks):
            covered = {phi.images[pos[E3.images[y]]] for y in p.blocks[alpha.images[i]]}
            assert {E1.images[x] for x in b} <= covered


class TestBuildJFactors:
    def test_inclusion_image_map(self, inst_full):
        dom = sorted(set(F1.images))
        phi = FiniteMap(len(dom), 4, tuple(dom))
        ident2 = FiniteMap.identity(2)
        h1, h2 = build_j_factors(F1, F1, ident2, ident2, phi, inst_full)
        assert compose(compose(h1, F1), h2) == F1

    def test_rejects_non_covering_phi(self, inst_full):
        dom = sorted(set(E1.images))
        phi = FiniteMap(len(dom), 4, (0, 0))
        ident2 = FiniteMap.identity(2)
        with pytest.raises(PreconditionError):
            build_j_factors(F1, E1, ident2, ident2, phi, inst_full)


class TestTxpSpecializations:
    def test_examples(self, inst_full, p22):
        assert txp_green("L", F1, F1, p22)
        assert txp_green("R", E1, E2, p22)
        assert not txp_green("J", CONST, FiniteMap.identity(4), p22)

    def test_agrees_with_generic_modes_exhaustively(self):
        p = Partition.of([[0, 1], [2]])
        inst = Instance(p, IndexSemigroup.full(2))
        members = enumerate_elements(inst)
        assert len(members) == 15
        for f in members:
            for g in members:
                for rel in ("L", "R", "D", "J"):
                    specialized = txp_green(rel, f, g, p)
                    oracle = {
                        "L": l_related, "R": r_related, "D": d_related, "J": j_related,
                    }[rel](f, g, inst, mode="oracle") is not None
                    assert specialized == oracle, (rel, f, g)

    def test_agrees_on_sampled_pairs_of_the_big_instance(self, inst_full):
        members = enumerate_elements(inst_full)
        rng = random.Random(11)
        checkers = {"L": l_related, "R": r_related, "D": d_related, "J": j_related}
        for _ in range(25):
            f = members[rng.randrange(len(members))]
            g = members[rng.randrange(len(members))]
            for rel, checker in checkers.items():
                specialized = txp_green(rel, f, g, inst_full.partition)
                assert specialized == (checker(f, g, inst_full, mode="oracle") is not None)
                assert specialized == (checker(f, g, inst_full, mode="theorem") is not None)

    def test_rejects_non_preserving(self, p22):
        with pytest.raises(InvalidArgumentError):
            txp_green("L", fm([2, 3, 3, 0]), E1, p22)


class TestFullTxGreen:
    def test_examples(self):
        assert full_tx_green("L", fm([0, 0, 2, 2]), fm([2, 2, 0, 0]))
        assert full_tx_green("R", F1, F1)
        assert full_tx_green("J", fm([0, 0, 0, 0]), fm([1, 1, 1, 1]))

    def test_size_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            full_tx_green("L", fm([0, 1]), fm([0, 1, 2]))

    def test_matches_oracles_on_the_full_transformation_semigroup(self):
        p = Partition.of([[0, 1, 2]])
        inst = Instance(p, IndexSemigroup.trivial(1))
        members = enumerate_elements(inst)
        assert len(members) == 27
        checkers = {"L": l_related, "R": r_related, "D": d_related, "J": j_related}
        for f in members:
            for g in members:
                for rel, checker in checkers.items():
                    expected = full_tx_green(rel, f, g)
                    assert (checker(f, g, inst, mode="oracle") is not None) == expected
        # D and J coincide on the one-block case
        for f in members:
            for g in members:
                assert (d_related(f, g, inst, mode="oracle") is not None) == (
                    j_related(f, g, inst, mode="oracle") is not None
                )


class TestWitnessPlumbing:
    def test_verify_witness_rejects_wrong_factors(self):
        bogus = GreenWitness(relation="L", factors=(("fg", fm([0, 1, 2, 3])),
                                                    ("gf", fm([0, 1, 2, 3]))))
        assert not verify_witness(bogus, E1, E2)
        missing = GreenWitness(relation="L")
        assert not verify_witness(missing, E1, E1)

    def test_unknown_relation(self):
        with pytest.raises(InvalidArgumentError):
            verify_witness(GreenWitness(relation="X"), E1, E1)


class TestEggbox:
    def test_full_transformation_semigroup_on_three_points(self):
        p = Partition.of([[0, 1, 2]])
        inst = Instance(p, IndexSemigroup.trivial(1))
        boxes = eggbox(inst)
        members = enumerate_elements(inst)
        sizes = sorted(
            sum(len(cell) for row in box["grid"] for cell in row) for box in boxes
        )
        assert sizes == [3, 6, 18]  # constants, bijections, rank-two maps
        assert sum(sizes) == len(members)
        rank2 = next(b for b in boxes
                     if sum(len(c) for r in b["grid"] for c in r) == 18)
        assert len(rank2["r_classes"]) == 3 and len(rank2["l_classes"]) == 3
        for row in rank2["grid"]:
            for cell in row:
                assert len(cell) == 2  # H-classes of rank-two maps

    def test_character_descent_on_the_full_instance(self, inst_full):
        members = enumerate_elements(inst_full)
        si = [a.images for a in inst_full.si.elements]
        p = inst_full.partition
        rng = random.Random(3)
        for _ in range(40):
            f = members[rng.randrange(len(members))]
            g = members[rng.randrange(len(members))]
            if l_related(f, g, inst_full, mode="oracle") is not None:
                cf, cg = character(f, p).images, character(g, p).images
                assert any(comp(a, cg) == cf for a in si)
                assert any(comp(a, cf) == cg for a in si)
