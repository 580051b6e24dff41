import itertools
import math

import numpy as np
import pytest

from cayleyspec.arrangement import (
    SCAN_COLUMNS,
    build_arrangement,
    equitable_quotient,
    integrality_scan,
    lift_eigenvalues,
    m_size,
    scan_cell,
    scan_to_csv,
    unique_neighbor_quotient,
    verify_quotient_identity,
)
from cayleyspec.errors import CapExceededError
from cayleyspec.genset import m_set
from cayleyspec.spectrum import matrix_integrality


def hamming_oracle(n, k, r):
    verts = list(itertools.permutations(range(1, n + 1), k))
    a = np.zeros((len(verts), len(verts)), dtype=int)
    for i, u in enumerate(verts):
        for j, v in enumerate(verts):
            a[i, j] = sum(x != y for x, y in zip(u, v)) == r
    return a


class TestBuild:
    def test_complete(self):
        a = build_arrangement(4, 1, 1)
        assert a.vertex_count == 4 and a.degree == 3
        assert matrix_integrality(a.adjacency).spectrum.as_dict() == {3: 1, -1: 3}

    def test_edgeless(self):
        a = build_arrangement(3, 3, 1)
        assert a.degree == 0
        assert matrix_integrality(a.adjacency).spectrum.as_dict() == {0: 6}

    def test_a421(self):
        a = build_arrangement(4, 2, 1)
        assert a.vertex_count == 12 and a.degree == 4 == 2 * (4 - 2)

    @pytest.mark.parametrize("n,k,r", [(3, 2, 1), (4, 2, 2), (4, 3, 2), (5, 2, 1)])
    def test_matches_oracle(self, n, k, r):
        assert np.array_equal(build_arrangement(n, k, r).adjacency, hamming_oracle(n, k, r))

    def test_params(self):
        with pytest.raises(ValueError):
            build_arrangement(3, 2, 3)
        with pytest.raises(CapExceededError):
            build_arrangement(7, 6, 1)

    def test_edges(self):
        e = build_arrangement(4, 2, 1).edges()
        assert len(e) == 12 * 4 // 2
        assert (e[:, 0] < e[:, 1]).all()


class TestMSize:
    @pytest.mark.parametrize("n,k,r", [(n, k, r) for n in range(2, 6) for k in range(1, n + 1) for r in range(1, k + 1)])
    def test_closed_form_matches_enumeration(self, n, k, r):
        assert m_size(n, k, r) == len(m_set(n, k, r))

    def test_degree_relation(self):
        for n, k, r in [(4, 2, 1), (5, 3, 2), (5, 4, 3)]:
            assert build_arrangement(n, k, r).degree == m_size(n, k, r) // math.factorial(n - k)


class TestQuotient:
    def test_421(self):
        q = equitable_quotient(4, 2, 1)
        assert q.entries.shape == (12, 12)
        assert set(np.unique(q.entries)) <= {0, 2}
        assert (q.entries.sum(axis=1) == 8).all()

    def test_422(self):
        q = equitable_quotient(4, 2, 2)
        assert np.array_equal(q.entries, 2 * build_arrangement(4, 2, 2).adjacency)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_trivial_subgroup(self, r):
        q = equitable_quotient(3, 3, r)
        assert np.array_equal(q.entries, q.host.adjacency())

    @pytest.mark.parametrize("n,k,r", [(4, 2, 1), (5, 3, 2), (4, 4, 2), (5, 2, 2)])
    def test_identity(self, n, k, r):
        check = verify_quotient_identity(n, k, r)
        assert check.ok
        assert str(check) == f"Q == {math.factorial(n - k)}·A : true"

    def test_unique_neighbor(self):
        q = unique_neighbor_quotient(4, 2)
        assert np.array_equal(q.entries, build_arrangement(4, 2, 1).adjacency)
        assert not np.diag(q.entries).any()
        assert matrix_integrality(q.entries).verdict == "integral"

    def test_unique_neighbor_params(self):
        with pytest.raises(ValueError):
            unique_neighbor_quotient(3, 3)


class TestLift:
    @pytest.mark.parametrize("n,k,r", [(3, 2, 1), (4, 2, 1), (4, 3, 2)])
    def test_lift(self, n, k, r):
        rep = lift_eigenvalues(n, k, r)
        assert rep.ok and rep.exact
        top = max(rep.arrangement.values)
        assert rep.containment[top][0] == m_size(n, k, r)


class TestScan:
    def test_small_scan(self):
        rows = integrality_scan(4)
        assert len(rows) == 1 + 3 + 6
        assert all(row.integral == "yes" for row in rows if row.r == 1)
        assert {row.status for row in rows} == {"theorem", "observational"}

    def test_k1_rows(self):
        for row in integrality_scan(5):
            if row.k == 1:
                assert (row.min_eig, row.max_eig) == (-1, row.n - 1)

    def test_cell_432_exact(self):
        row = scan_cell(4, 3, 2)
        assert row.exact == "yes" and row.integral in {"yes", "no"}

    def test_skipped(self):
        row = scan_cell(6, 5, 1, budget=100)
        assert row.integral == "skipped"

    def test_csv(self):
        text = scan_to_csv(integrality_scan(3))
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(SCAN_COLUMNS)
        assert lines[1] == "2,1,1,2,1,yes,-1,1,yes,theorem"
