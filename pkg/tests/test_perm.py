import itertools
import math
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyspec.errors import CapExceededError
from cayleyspec.perm import (
    CycleType,
    GroundPartition,
    Permutation,
    all_cycle_types,
    class_size,
    compose,
    conjugacy_class,
    conjugate,
    coset_vector,
    cycle_decomposition,
    cycle_type,
    enumerate_group,
    group_array,
    inverse,
    move_set,
    rank_images,
    right_cosets,
    two_block_partitions,
    young_subgroup,
)


def P(text, n):
    return Permutation.parse(text, n)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(lambda xs: Permutation(tuple(xs)))


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))
        with pytest.raises(ValueError):
            Permutation(())

    def test_parse_roundtrip(self):
        p = P("(1 3 2)(4 5)", 5)
        assert Permutation.parse(str(p)) == p
        assert p.cycle_notation() == "(1 3 2)(4 5)"
        assert Permutation.identity(3).cycle_notation() == "()"

    def test_cycle_notation_needs_degree(self):
        with pytest.raises(ValueError):
            Permutation.parse("(1 2)")


class TestCompose:
    def test_worked_example(self):
        assert compose(P("(1 2 3)", 3), P("(2 3)", 3)) == P("(1 3)", 3)

    def test_identity_and_involution(self):
        s = P("(1 4 2)", 4)
        assert compose(s, Permutation.identity(4)) == s
        assert compose(P("(1 2)", 3), P("(1 2)", 3)) == Permutation.identity(3)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(Permutation.identity(3), Permutation.identity(4))

    def test_associative_exhaustive_s4(self):
        g = enumerate_group(4)
        for a, b, c in itertools.product(g, repeat=3):
            assert compose(compose(a, b), c) == compose(a, compose(b, c))

    def test_associative_random_s7(self):
        rng = random.Random(7)
        for _ in range(500):
            a, b, c = (Permutation(tuple(rng.sample(range(1, 8), 7))) for _ in range(3))
            assert compose(compose(a, b), c) == compose(a, compose(b, c))


class TestInverseConjugate:
    def test_inverse_examples(self):
        assert inverse(P("(1 2 3)", 3)) == P("(1 3 2)", 3)
        assert inverse(Permutation.identity(4)) == Permutation.identity(4)
        x = P("(1 4)(2 3)", 4)
        assert inverse(x) == x

    @given(perms(6))
    def test_inverse_property(self, a):
        assert compose(a, inverse(a)) == Permutation.identity(6)

    def test_conjugate_example(self):
        assert conjugate(P("(1 3)", 3), P("(1 2)", 3)) == P("(2 3)", 3)

    def test_conjugate_by_identity(self):
        a = P("(1 5 2)(3 4)", 5)
        assert conjugate(a, Permutation.identity(5)) == a

    def test_conjugate_preserves_type_random(self):
        rng = random.Random(1)
        for _ in range(1000):
            a, g = (Permutation(tuple(rng.sample(range(1, 7), 6))) for _ in range(2))
            assert cycle_type(conjugate(a, g)) == cycle_type(a)

    def test_relabelling_identity_every_cycle_s5(self):
        # g^-1 (c1 ... cl) g == (g(c1) ... g(cl)) for every cycle and every g in S_5
        g5 = enumerate_group(5)
        for l in range(2, 6):
            for c in itertools.permutations(range(1, 6), l):
                if c[0] != min(c):
                    continue
                cyc = Permutation.from_cycles([c], 5)
                for g in g5:
                    assert conjugate(cyc, g) == Permutation.from_cycles([tuple(g(x) for x in c)], 5)

    def test_conjugation_preserves_type_exhaustive_s5(self):
        g5 = enumerate_group(5)
        types = {a: cycle_type(a) for a in g5}
        for a in g5:
            for g in g5[::7]:
                assert types[conjugate(a, g)] == types[a]


class TestCycles:
    def test_decomposition(self):
        assert cycle_decomposition(Permutation((2, 1, 4, 3))) == [(1, 2), (3, 4)]
        assert cycle_decomposition(Permutation.identity(4)) == []
        assert cycle_decomposition(Permutation((3, 1, 2, 4))) == [(1, 3, 2)]

    def test_recomposition_exhaustive_s5(self):
        for a in enumerate_group(5):
            rebuilt = Permutation.identity(5)
            for c in cycle_decomposition(a):
                rebuilt = compose(rebuilt, Permutation.from_cycles([c], 5))
            assert rebuilt == a

    def test_cycle_type_examples(self):
        assert cycle_type(Permutation.identity(4)).counts == (4, 0, 0, 0)
        assert cycle_type(P("(1 2)(3 4)", 4)).counts == (0, 2, 0, 0)
        assert cycle_type(P("(1 2 3)", 5)).counts == (2, 0, 1, 0, 0)

    def test_move_set(self):
        assert move_set(Permutation.identity(3)) == frozenset()
        assert move_set(P("(1 3)(2 5)", 5)) == {1, 2, 3, 5}
        assert move_set(P("(1 2 3)", 6)) == {1, 2, 3}

    @given(perms(7))
    @settings(max_examples=50)
    def test_type_sums_to_n(self, a):
        t = cycle_type(a)
        assert sum(i * c for i, c in enumerate(t.counts, 1)) == 7


class TestCycleType:
    def test_invalid(self):
        with pytest.raises(ValueError):
            CycleType((2, 1, 0))

    def test_string_forms(self):
        t = CycleType.parse("1^2 2^1")
        assert str(t) == "1^2 2^1"
        assert t.parts() == (2, 1, 1)
        assert CycleType.parse("3", n=3) == CycleType.from_parts([3])
        with pytest.raises(ValueError):
            CycleType.parse("1^2 3^1", n=4)


class TestEnumeration:
    def test_small_groups(self):
        assert enumerate_group(1) == [Permutation.identity(1)]
        g3 = enumerate_group(3)
        assert len(g3) == 6
        assert g3[0] == Permutation.identity(3)
        assert g3[-1].images == (3, 2, 1)
        assert g3 == sorted(g3)
        assert len(enumerate_group(6)) == 720

    def test_cap(self):
        with pytest.raises(CapExceededError, match="cap"):
            enumerate_group(9)
        assert len(enumerate_group(2, cap=2)) == 2

    def test_rank_matches_enumeration_order(self):
        arr = group_array(6)
        assert np.array_equal(rank_images(arr), np.arange(720))


class TestClasses:
    def test_transpositions_s4(self):
        t = CycleType.parse("1^2 2^1")
        cls = conjugacy_class(t)
        assert len(cls) == 6 == class_size(t)
        assert all(len(cycle_decomposition(p)) == 1 and len(move_set(p)) == 2 for p in cls)

    def test_identity_class(self):
        t = CycleType.from_parts([1] * 5)
        assert conjugacy_class(t) == {Permutation.identity(5)}
        assert class_size(t) == 1

    def test_enumerated_sizes_match_formula_s5(self):
        counts = Counter(cycle_type(p) for p in enumerate_group(5))
        assert set(counts) == set(all_cycle_types(5))
        for t, c in counts.items():
            assert class_size(t) == c

    def test_class_is_orbit_exhaustive_s5(self):
        g5 = enumerate_group(5)
        for t in all_cycle_types(5):
            u = next(iter(conjugacy_class(t)))
            assert conjugacy_class(t) == {conjugate(u, g) for g in g5}

    @pytest.mark.parametrize("n", range(1, 9))
    def test_class_sizes_sum(self, n):
        assert sum(class_size(t) for t in all_cycle_types(n)) == math.factorial(n)


class TestYoungAndCosets:
    def test_young_subgroup(self):
        assert young_subgroup(3, {2, 3}) == {Permutation.identity(3), P("(2 3)", 3)}
        assert young_subgroup(4, set()) == {Permutation.identity(4)}
        assert len(young_subgroup(5, {1, 2, 3})) == 6

    def test_trivial_subgroup_cosets(self):
        c = right_cosets(3, {3})
        assert c.index == 6

    def test_cosets_of_pair(self):
        c = right_cosets(4, {3, 4})
        assert c.index == 12
        assert c.representatives[0] == Permutation.identity(4)

    def test_every_element_in_one_coset_s4(self):
        c = right_cosets(4, {3, 4})
        cosets = [c.coset(i) for i in range(c.index)]
        for g in enumerate_group(4):
            assert sum(g in cs for cs in cosets) == 1
        assert all(len(cs) == 2 for cs in cosets)
        for i, cs in enumerate(cosets):
            assert min(cs) == c.representatives[i]
            assert all(c.block_of(g) == i for g in cs)

    @pytest.mark.parametrize("support", [{1}, {2, 4}, {1, 3, 5}, set(), {1, 2, 3, 4, 5}])
    def test_cosets_partition_non_tail_support(self, support):
        c = right_cosets(5, support)
        assert c.index == 120 // math.factorial(len(support))
        ids = c.block_ids(group_array(5))
        assert np.all(np.bincount(ids) == math.factorial(len(support)))

    def test_coset_vectors(self):
        c = right_cosets(4, {3, 4})
        assert coset_vector(c, 0, 2) == (1, 2)
        vecs = [coset_vector(c, i, 2) for i in range(c.index)]
        assert sorted(vecs) == list(itertools.permutations(range(1, 5), 2))
        assert len(set(vecs)) == len(vecs)
        with pytest.raises(ValueError):
            coset_vector(c, 0, 3)


class TestGroundPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            GroundPartition((frozenset({1, 2}),))
        with pytest.raises(ValueError):
            GroundPartition((frozenset({1, 2}), frozenset({2, 3})))
        with pytest.raises(ValueError):
            GroundPartition((frozenset({1}), frozenset({3})))

    def test_two_block_partitions(self):
        ps = two_block_partitions(4)
        assert len(ps) == 2**3 - 1
        assert len(set(ps)) == len(ps)
        assert str(GroundPartition.parse("{2 3 4}{1}")) == "{1}{2 3 4}"
