"""
Cayley graphs Gamma(S_n, S): vertex u is joined to s*u for every s in S.

Vertex ids are lexicographic ranks of image arrays, so vertex 0 is the
identity.  Adjacency is kept as a neighbour table of shape (n!, |S|); dense
matrices are only materialised inside the dense budget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from cayleyspec import config
from cayleyspec.errors import CapExceededError
from cayleyspec.genset import GeneratingSet, are_commutative, custom
from cayleyspec.perm import Permutation, group_array, move_set, rank_images
from cayleyspec.spectrum import (
    IntegralityVerdict,
    NonIntegralityCertificate,
    Spectrum,
    exact_integer_spectrum,
    matrix_integrality,
    numeric_spectrum,
)


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    n: int
    genset: GeneratingSet
    neighbors: np.ndarray

    @property
    def vertex_count(self) -> int:
        return self.neighbors.shape[0]

    @property
    def degree(self) -> int:
        return self.neighbors.shape[1]

    def adjacency(self, budget: int | None = None) -> np.ndarray:
        budget = config.DENSE_BUDGET if budget is None else budget
        if self.vertex_count > budget:
            raise CapExceededError(f"{self.vertex_count} vertices exceed the dense budget {budget}")
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        rows = np.repeat(np.arange(self.vertex_count), self.degree)
        a[rows, self.neighbors.ravel()] = 1
        return a

    def sparse_adjacency(self) -> sp.csr_matrix:
        rows = np.repeat(np.arange(self.vertex_count), self.degree)
        data = np.ones(rows.size, dtype=np.int64)
        return sp.csr_matrix((data, (rows, self.neighbors.ravel())), shape=(self.vertex_count,) * 2)

    def edges(self) -> np.ndarray:
        """Edges as a sorted (E, 2) array with u < v."""
        u = np.repeat(np.arange(self.vertex_count), self.degree)
        v = self.neighbors.ravel()
        keep = u < v
        e = np.stack([u[keep], v[keep]], axis=1)
        return e[np.lexsort((e[:, 1], e[:, 0]))]


def build_cayley(n: int, s: GeneratingSet, cap: int | None = None, max_vertices: int | None = None) -> CayleyGraph:
    if s.degree != n:
        raise ValueError(f"generating set has degree {s.degree}, expected {n}")
    if not s.inverse_closed:
        raise ValueError("generating set is not inverse closed")
    if max_vertices is not None and math.factorial(n) > max_vertices:
        raise CapExceededError(f"S_{n} has {math.factorial(n)} vertices, over the limit of {max_vertices}")
    g = group_array(n, cap)
    cols = []
    for gen in s:
        # (s*u)(i) = u(s(i))
        cols.append(rank_images(g[:, np.array(gen.images) - 1]))
    neighbors = np.stack(cols, axis=1) if cols else np.zeros((g.shape[0], 0), dtype=np.int64)
    neighbors.setflags(write=False)
    return CayleyGraph(n, s, neighbors)


def spectrum_numeric(g: CayleyGraph, budget: int | None = None) -> Spectrum:
    budget = config.DENSE_BUDGET if budget is None else budget
    if g.vertex_count > budget:
        raise CapExceededError(
            f"{g.vertex_count} vertices exceed the numeric budget {budget}; "
            "use normal_cayley_spectrum or disjoint_union_spectrum"
        )
    return numeric_spectrum(g.adjacency(budget), budget)


def spectrum_exact(g: CayleyGraph, budget: int | None = None) -> Spectrum | NonIntegralityCertificate:
    budget = config.EXACT_BUDGET if budget is None else budget
    if g.vertex_count > budget:
        raise CapExceededError(f"{g.vertex_count} vertices exceed the exact budget {budget}")
    return exact_integer_spectrum(g.adjacency())


def verify_integrality(g: CayleyGraph, exact_budget: int | None = None, numeric_budget: int | None = None) -> IntegralityVerdict:
    """Exact verdict inside the exact budget; numeric screen (never ``non_integral``) up to the dense budget."""
    numeric_budget = config.DENSE_BUDGET if numeric_budget is None else numeric_budget
    if g.vertex_count > numeric_budget:
        return IntegralityVerdict("undecided", exact=False)
    return matrix_integrality(g.adjacency(numeric_budget), exact_budget, numeric_budget)


def _relabel(s: GeneratingSet, support: list[int]) -> GeneratingSet:
    pos = {x: i for i, x in enumerate(support, 1)}
    m = len(support)
    elems = [Permutation(tuple(pos[p(x)] for x in support)) for p in s]
    return custom(m, elems)


def disjoint_union_spectrum(n: int, t, s: GeneratingSet) -> Spectrum:
    """
    Spectrum of Gamma(S_n, S) for S inside S_n(T), computed on the small
    group S_n(T) and repeated once per right coset.
    """
    support = sorted(set(t))
    if any(not move_set(p) <= set(support) for p in s):
        raise ValueError(f"generating set moves points outside T={support}")
    if not support:
        return Spectrum(((0, math.factorial(n)),), exact=True)
    small = build_cayley(len(support), _relabel(s, support))
    res = spectrum_exact(small, budget=max(small.vertex_count, config.EXACT_BUDGET))
    if not isinstance(res, Spectrum):
        res = spectrum_numeric(small)
    return res.repeated(math.factorial(n) // math.factorial(len(support)))


@dataclass
class CommutingReport:
    commute: bool
    sum_in_sumset: bool
    difference_in_diffset: bool
    identity: bool
    identity_kind: str  # "union" | "difference" | "none"
    exact: bool
    preconditions: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.commute and self.sum_in_sumset and self.difference_in_diffset
            and self.identity and not self.preconditions
        )


def _best_spectrum(a) -> Spectrum:
    v = matrix_integrality(a, exact_budget=max(a.shape[0], config.EXACT_BUDGET))
    if v.verdict == "integral" and v.exact:
        return v.spectrum
    return numeric_spectrum(a)


def _contained(target: Spectrum, s1: Spectrum, s2: Spectrum, sign: int) -> bool:
    combos = [l + sign * g for l in s1.values for g in s2.values]
    if target.exact and s1.exact and s2.exact:
        return set(target.values) <= set(combos)
    combos_arr = np.array(combos, dtype=float)
    return all(np.min(np.abs(combos_arr - float(v))) <= config.SCREEN_TOL for v in target.values)


def commuting_combination_check(s1: GeneratingSet, s2: GeneratingSet, n: int) -> CommutingReport:
    """
    Check on explicit matrices that commuting adjacency matrices A1, A2 have
    sum and difference spectra inside the sum and difference sets of their
    spectra, and that A1 +/- A2 is the adjacency matrix of the union or
    difference of the generating sets.
    """
    pre = []
    if not are_commutative(s1, s2, n):
        pre.append("generating sets do not commute in the group algebra")
    a1 = build_cayley(n, s1).adjacency()
    a2 = build_cayley(n, s2).adjacency()
    commute = bool(np.array_equal(a1 @ a2, a2 @ a1))

    sp1, sp2 = _best_spectrum(a1), _best_spectrum(a2)
    sp_sum, sp_diff = _best_spectrum(a1 + a2), _best_spectrum(a1 - a2)
    exact = all(x.exact for x in (sp1, sp2, sp_sum, sp_diff))

    e1, e2 = s1.elements, s2.elements
    if not e1 & e2:
        kind = "union"
        identity = bool(np.array_equal(build_cayley(n, custom(n, e1 | e2)).adjacency(), a1 + a2))
    elif e2 <= e1:
        kind = "difference"
        identity = bool(np.array_equal(build_cayley(n, custom(n, e1 - e2)).adjacency(), a1 - a2))
    else:
        kind, identity = "none", False
        pre.append("sets are neither disjoint nor nested")
    return CommutingReport(
        commute=commute,
        sum_in_sumset=_contained(sp_sum, sp1, sp2, +1),
        difference_in_diffset=_contained(sp_diff, sp1, sp2, -1),
        identity=identity,
        identity_kind=kind,
        exact=exact,
        preconditions=pre,
    )
