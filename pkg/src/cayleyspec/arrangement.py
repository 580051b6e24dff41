"""
Arrangement graphs A(n,k,r) and their relation to Cayley graphs of S_n.

The right cosets of S_n(T), T = {k+1..n}, form an equitable partition of
Gamma(S_n, M(r)) whose quotient matrix is (n-k)! times the adjacency matrix
of A(n,k,r).  With the straddling transpositions {(i j): i <= k < j} as
generating set instead, the quotient is A(n,k,1) itself.

Coset blocks and arrangement vertices are both ordered lexicographically by
their k-tuple, so the quotient identity is an entrywise comparison.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from cayleyspec import config
from cayleyspec.cayley import CayleyGraph, build_cayley
from cayleyspec.errors import CapExceededError, InvariantViolation
from cayleyspec.genset import m_set, straddling
from cayleyspec.perm import CosetSystem, CycleType, coset_vector, group_array, right_cosets
from cayleyspec.spectrum import IntegralityVerdict, Spectrum, matrix_integrality, to_fmpz


def _check_params(n: int, k: int, r: int) -> None:
    if not 1 <= r <= k <= n:
        raise ValueError(f"need 1 <= r <= k <= n, got n={n}, k={k}, r={r}")


def m_size(n: int, k: int, r: int) -> int:
    """|M(r)| by inclusion-exclusion: choose the r moved points of [k], fix the rest, derange the chosen ones."""
    _check_params(n, k, r)
    free = n - k + r
    return math.comb(k, r) * sum((-1) ** j * math.comb(r, j) * math.factorial(free - j) for j in range(r + 1))


def vertex_count(n: int, k: int) -> int:
    return math.factorial(n) // math.factorial(n - k)


@dataclass(frozen=True, eq=False)
class ArrangementGraph:
    n: int
    k: int
    r: int
    vertices: np.ndarray  # (L, k) k-permutations in lexicographic order
    adjacency: np.ndarray

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]

    @property
    def degree(self) -> int:
        return int(self.adjacency[0].sum()) if self.vertex_count else 0

    def edges(self) -> np.ndarray:
        u, v = np.nonzero(np.triu(self.adjacency, 1))
        return np.stack([u, v], axis=1)


def build_arrangement(n: int, k: int, r: int, budget: int | None = None) -> ArrangementGraph:
    _check_params(n, k, r)
    budget = config.ARRANGEMENT_BUDGET if budget is None else budget
    count = vertex_count(n, k)
    if count > budget:
        raise CapExceededError(f"A({n},{k},{r}) has {count} vertices, over the arrangement budget {budget}")
    verts = np.array(list(itertools.permutations(range(1, n + 1), k)), dtype=np.int64).reshape(count, k)
    diff = np.zeros((count, count), dtype=np.int64)
    for j in range(k):
        diff += verts[:, None, j] != verts[None, :, j]
    adj = (diff == r).astype(np.int64)
    expected = m_size(n, k, r) // math.factorial(n - k)
    if not np.all(adj.sum(axis=1) == expected):
        raise InvariantViolation(f"A({n},{k},{r}) is not {expected}-regular")
    return ArrangementGraph(n, k, r, verts, adj)


@dataclass(frozen=True, eq=False)
class QuotientMatrix:
    host: CayleyGraph
    partition: CosetSystem
    entries: np.ndarray


def _quotient(host: CayleyGraph, cosets: CosetSystem) -> tuple[np.ndarray, np.ndarray]:
    block = cosets.block_ids(group_array(host.n))
    l = cosets.index
    counts = np.zeros((host.vertex_count, l), dtype=np.int32)
    rows = np.repeat(np.arange(host.vertex_count), host.degree)
    np.add.at(counts, (rows, block[host.neighbors.ravel()]), 1)
    # first vertex of each block, in vertex order
    order = np.argsort(block, kind="stable")
    starts = np.searchsorted(block[order], np.arange(l))
    first = order[starts]
    q = counts[first]
    if not np.array_equal(counts, q[block]):
        bad = int(np.nonzero((counts != q[block]).any(axis=1))[0][0])
        raise InvariantViolation(f"coset partition is not equitable (vertex {bad}, block {int(block[bad])})")
    return q.astype(np.int64), block


def equitable_quotient(n: int, k: int, r: int) -> QuotientMatrix:
    """Quotient of Gamma(S_n, M(r)) by the right cosets of S_n({k+1..n}), with the block checks."""
    _check_params(n, k, r)
    host = build_cayley(n, m_set(n, k, r))
    cosets = right_cosets(n, range(k + 1, n + 1))
    q, _ = _quotient(host, cosets)
    block_size = math.factorial(n - k)
    if np.any(np.diag(q) != 0):
        raise InvariantViolation("two vertices of the same coset are adjacent")
    if not np.all((q == 0) | (q == block_size)):
        raise InvariantViolation(f"cross-coset adjacency is not all-or-nothing (block size {block_size})")
    return QuotientMatrix(host, cosets, q)


def unique_neighbor_quotient(n: int, k: int) -> QuotientMatrix:
    """Quotient of Gamma(S_n, {(i j): i <= k < j}) by the same cosets; entries are 0/1."""
    if not n > k >= 2:
        raise ValueError(f"need n > k >= 2, got n={n}, k={k}")
    s = straddling(n, k, [CycleType.from_parts([2] + [1] * (n - 2))])
    host = build_cayley(n, s)
    cosets = right_cosets(n, range(k + 1, n + 1))
    q, _ = _quotient(host, cosets)
    if np.any(np.diag(q) != 0):
        raise InvariantViolation("two vertices of the same coset are adjacent")
    if not np.all((q == 0) | (q == 1)):
        raise InvariantViolation("a vertex has more than one neighbour in some other coset")
    return QuotientMatrix(host, cosets, q)


@dataclass
class QuotientCheck:
    ok: bool
    factor: int
    counterexample: tuple | None = None  # (i, j, q_ij, factor * a_ij)

    def __str__(self) -> str:
        return f"Q == {self.factor}·A : {'true' if self.ok else 'false'}"


def _match_vertices(quotient: QuotientMatrix, graph: ArrangementGraph) -> bool:
    vecs = np.array([coset_vector(quotient.partition, i, graph.k) for i in range(quotient.partition.index)])
    return np.array_equal(vecs.reshape(graph.vertices.shape), graph.vertices)


def verify_quotient_identity(n: int, k: int, r: int) -> QuotientCheck:
    q = equitable_quotient(n, k, r)
    a = build_arrangement(n, k, r)
    factor = math.factorial(n - k)
    if not _match_vertices(q, a):
        raise InvariantViolation("coset vectors and arrangement vertices are not in the same order")
    target = factor * a.adjacency
    if np.array_equal(q.entries, target):
        return QuotientCheck(True, factor)
    i, j = (int(x) for x in np.argwhere(q.entries != target)[0])
    return QuotientCheck(False, factor, (i, j, int(q.entries[i, j]), int(target[i, j])))


def _poly_divides(small, big) -> bool:
    p = to_fmpz(small).charpoly()
    h = to_fmpz(big).charpoly()
    return (h % p) == 0


@dataclass
class LiftReport:
    n: int
    k: int
    r: int
    factor: int
    ok: bool
    exact: bool
    arrangement: Spectrum | None = None
    host: Spectrum | None = None
    containment: dict = field(default_factory=dict)  # lambda -> (factor*lambda, mult in A, mult in host)
    partial: bool = False
    note: str = ""


def lift_eigenvalues(n: int, k: int, r: int, exact_budget: int | None = None) -> LiftReport:
    """
    Check that each eigenvalue lambda of A(n,k,r) gives the eigenvalue
    (n-k)! * lambda of Gamma(S_n, M(r)), with at least the same multiplicity.

    Integral spectra are compared exactly; otherwise the characteristic
    polynomial of the quotient must divide that of the host.
    """
    _check_params(n, k, r)
    exact_budget = config.EXACT_BUDGET if exact_budget is None else exact_budget
    factor = math.factorial(n - k)
    if math.factorial(n) > config.DENSE_BUDGET or vertex_count(n, k) > config.ARRANGEMENT_BUDGET:
        return LiftReport(n, k, r, factor, ok=False, exact=False, partial=True, note="out of budget")
    a = build_arrangement(n, k, r)
    host = build_cayley(n, m_set(n, k, r))
    host_adj = host.adjacency()
    va = matrix_integrality(a.adjacency, exact_budget)
    vh = matrix_integrality(host_adj, exact_budget)
    if va.verdict == "integral" and vh.verdict == "integral" and va.exact and vh.exact:
        containment = {
            lam: (factor * lam, m, vh.spectrum.multiplicity(factor * lam)) for lam, m in va.spectrum.pairs
        }
        ok = all(hm >= m for _, m, hm in containment.values())
        return LiftReport(n, k, r, factor, ok, True, va.spectrum, vh.spectrum, containment)
    if host.vertex_count <= exact_budget:
        ok = _poly_divides(factor * a.adjacency, host_adj)
        return LiftReport(n, k, r, factor, ok, True, va.spectrum, vh.spectrum, note="characteristic polynomial divisibility")
    # numeric fallback: multiset containment at the screening tolerance
    ea = np.sort(np.linalg.eigvalsh(a.adjacency.astype(float))) * factor
    eh = np.sort(np.linalg.eigvalsh(host_adj.astype(float)))
    ok = True
    for v in np.unique(np.round(ea, 6)):
        need = int(np.sum(np.abs(ea - v) <= config.SCREEN_TOL * 10))
        have = int(np.sum(np.abs(eh - v) <= config.SCREEN_TOL * 10))
        ok &= have >= need
    return LiftReport(n, k, r, factor, bool(ok), False, note="numeric containment")


@dataclass(frozen=True)
class ScanRow:
    n: int
    k: int
    r: int
    vertices: int
    degree: int
    integral: str  # yes | no | undecided | skipped
    min_eig: object
    max_eig: object
    exact: str

    @property
    def status(self) -> str:
        return "theorem" if self.r == 1 else "observational"


SCAN_COLUMNS = ["n", "k", "r", "vertices", "degree", "integral", "min_eig", "max_eig", "exact", "status"]


def _fmt_eig(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.9f}"
    return str(x)


def scan_cell(n: int, k: int, r: int, exact_budget: int | None = None, budget: int | None = None) -> ScanRow:
    exact_budget = config.EXACT_BUDGET if exact_budget is None else exact_budget
    budget = config.ARRANGEMENT_BUDGET if budget is None else budget
    count = vertex_count(n, k)
    degree = m_size(n, k, r) // math.factorial(n - k)
    if count > budget:
        return ScanRow(n, k, r, count, degree, "skipped", None, None, "no")
    a = build_arrangement(n, k, r, budget)
    v: IntegralityVerdict = matrix_integrality(a.adjacency, exact_budget, budget)
    if v.verdict == "integral" or v.spectrum is not None:
        lo, hi = min(v.spectrum.values), max(v.spectrum.values)
    else:
        eig = np.linalg.eigvalsh(a.adjacency.astype(float))
        lo, hi = float(eig.min()), float(eig.max())
    label = {"integral": "yes", "non_integral": "no", "undecided": "undecided"}[v.verdict]
    return ScanRow(n, k, r, count, degree, label, lo, hi, "yes" if v.exact else "no")


def integrality_scan(max_n: int, exact_budget: int | None = None, budget: int | None = None) -> list[ScanRow]:
    """Integrality of A(n,k,r) for all 1 <= r <= k < n <= max_n.  Rows with r >= 2 are observational."""
    return [
        scan_cell(n, k, r, exact_budget, budget)
        for n in range(2, max_n + 1)
        for k in range(1, n)
        for r in range(1, k + 1)
    ]


def scan_to_csv(rows: list[ScanRow]) -> str:
    lines = [",".join(SCAN_COLUMNS)]
    for row in rows:
        lines.append(",".join([
            str(row.n), str(row.k), str(row.r), str(row.vertices), str(row.degree), row.integral,
            _fmt_eig(row.min_eig), _fmt_eig(row.max_eig), row.exact, row.status,
        ]))
    return "\n".join(lines) + "\n"
