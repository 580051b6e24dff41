import pytest

from cayleyspec.errors import CapExceededError, GensetParseError
from cayleyspec.genset import (
    are_commutative,
    class_union,
    custom,
    cy,
    decompose,
    format_genset,
    is_inverse_closed,
    is_normal,
    m_set,
    nicely_separated,
    parse_genset,
    straddling,
    t_complement,
)
from cayleyspec.perm import CycleType, GroundPartition, Permutation, cycle_type, enumerate_group, inverse, move_set


def P(text, n):
    return Permutation.parse(text, n)


def T(text):
    return CycleType.parse(text)


class TestCy:
    def test_cy2(self):
        assert cy(3, 2).elements == {P("(1 2)", 3), P("(1 3)", 3)}
        assert len(cy(4, 2)) == 3

    def test_sizes(self):
        assert len(cy(4, 3)) == 6
        assert len(cy(5, 5)) == 24

    def test_all_move_one(self):
        for n in range(2, 7):
            for r in range(2, n + 1):
                s = cy(n, r)
                assert all(1 in move_set(p) and cycle_type(p).parts()[0] == r for p in s)
                assert s.inverse_closed

    def test_bad_r(self):
        with pytest.raises(ValueError):
            cy(4, 1)


class TestMSet:
    def test_examples(self):
        assert len(m_set(4, 2, 1)) == 8
        assert len(m_set(3, 3, 3)) == 2

    def test_identity_excluded_and_closed(self):
        for n, k, r in [(4, 2, 2), (5, 3, 1), (5, 3, 3)]:
            s = m_set(n, k, r)
            assert Permutation.identity(n) not in s
            assert is_inverse_closed(s)


class TestPredicates:
    def test_inverse_closed(self):
        assert is_inverse_closed(cy(3, 2))
        assert not is_inverse_closed({P("(1 2 3)", 3)})

    def test_normal(self):
        assert is_normal(class_union(4, [T("1^2 2^1")]))
        assert not cy(4, 2).normal

    def test_commutative(self):
        assert are_commutative(class_union(4, [T("1^2 2^1")]), cy(4, 2), 4)
        assert not are_commutative({P("(1 2)", 3)}, {P("(1 3)", 3)}, 3)

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            custom(3, [Permutation.identity(3)])

    def test_empty_warns(self):
        with pytest.warns(UserWarning, match="empty"):
            custom(3, [])


class TestNicelySeparated:
    def test_t_complement(self):
        p = GroundPartition.parse("{1 2}{3 4}")
        tc = t_complement(p)
        assert Permutation.identity(4) not in tc
        assert P("(1 3)", 4) in tc and P("(1 2)", 4) not in tc

    def test_straddling_transpositions(self):
        s = straddling(4, 2, [T("1^2 2^1")])
        assert s.elements == {P("(1 3)", 4), P("(1 4)", 4), P("(2 3)", 4), P("(2 4)", 4)}

    def test_cy_is_nicely_separated(self):
        p = GroundPartition.parse("{1}{2 3 4}")
        assert nicely_separated(4, [T("1^2 2^1")], p).elements == cy(4, 2).elements

    def test_closed_under_inverse_exhaustive(self):
        from cayleyspec.perm import all_cycle_types, two_block_partitions

        for t in all_cycle_types(4):
            if t.is_identity():
                continue
            for p in two_block_partitions(4):
                s = nicely_separated(4, [t], p)
                assert all(inverse(g) in s for g in s)

    def test_decompose_reconstructs(self):
        s = nicely_separated(4, [T("1^2 2^1")], GroundPartition.parse("{1 2}{3 4}"))
        s0, parts = decompose(s)
        assert len(s0) == 6
        assert [len(x) for x in parts] == [1, 1]
        assert s0.elements - parts[0].elements - parts[1].elements == s.elements

    def test_decompose_needs_partition(self):
        with pytest.raises(ValueError):
            decompose(cy(4, 2).__class__(4, frozenset({P("(1 2)", 4)}), True, False, "custom"))


class TestParse:
    @pytest.mark.parametrize("text", ["cy:2", "m:2,1", "classes:1^2 2^1", "classes:1^2 2^1|1^1 3^1",
                                      "nicesep:1^2 2^1;{1}{2 3 4}", "custom:(1 2),(3 4)"])
    def test_roundtrip(self, text):
        s = parse_genset(text, 4)
        assert parse_genset(format_genset(s), 4).elements == s.elements

    def test_custom_format(self):
        assert format_genset(custom(3, [P("(1 2)", 3)])) == "custom:(1 2)"

    @pytest.mark.parametrize("text,token", [
        ("cy:x", "x"),
        ("classes:1^2 2^a", "2^a"),
        ("bogus:1", "bogus"),
        ("nicesep:1^2 2^1;1 2", "1 2"),
        ("custom:(1 2 3)", None),
    ])
    def test_errors(self, text, token):
        with pytest.raises(GensetParseError) as info:
            parse_genset(text, 4)
        if token is not None:
            assert info.value.token == token

    def test_wrong_sum(self):
        with pytest.raises(GensetParseError, match="sums to 3"):
            parse_genset("classes:1^1 2^1", 4)

    def test_missing_colon(self):
        with pytest.raises(GensetParseError):
            parse_genset("cy2", 4)

    def test_cap_is_not_a_parse_error(self):
        with pytest.raises(CapExceededError):
            parse_genset("cy:2", 9)

    def test_all_parsed_sets_valid(self):
        for text in ["cy:3", "m:3,2", "classes:4"]:
            s = parse_genset(text, 4)
            assert all(p != Permutation.identity(4) for p in s)
            assert s.inverse_closed

    def test_enumeration_consistency(self):
        g = enumerate_group(4)
        s = parse_genset("classes:2^2", 4)
        assert s.elements == {p for p in g if cycle_type(p) == T("2^2")}
