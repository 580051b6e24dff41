"""
Permutation algebra for the symmetric group S_n.

Permutations are stored as 1-based image arrays: ``images[i-1]`` is the image
of ``i``.  Products follow the left-factor-first convention,

    (a * b)(i) = b(a(i)),

so that ``(1 2 3)(2 3) == (1 3)`` and ``g^-1 (c1 ... cl) g == (g(c1) ... g(cl))``.

Vertex ids of Cayley graphs are lexicographic ranks of image arrays; the
vectorised helpers at the bottom of this module (``group_array``,
``rank_images``) work on whole groups at once.
"""
from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from cayleyspec import config
from cayleyspec.errors import CapExceededError


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if len(images) < 1:
            raise ValueError("degree must be at least 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(images)}: {images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        """
        >>> Permutation.from_cycles([(1, 2, 3)], 4)
        Permutation(images=(2, 3, 1, 4))
        """
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for j, c in enumerate(cyc):
                if not 1 <= c <= n or c in seen:
                    raise ValueError(f"bad cycle entry {c} for degree {n}")
                seen.add(c)
                images[c - 1] = cyc[(j + 1) % len(cyc)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        """
        Parse one-line notation ``"3 1 2"`` or cycle notation ``"(1 3 2)(4 5)"``.
        Cycle notation needs the degree ``n``.

        >>> Permutation.parse("3 1 2")
        Permutation(images=(3, 1, 2))
        >>> Permutation.parse("(1 3)", n=3)
        Permutation(images=(3, 2, 1))
        """
        text = text.strip()
        if text.startswith("("):
            if n is None:
                raise ValueError("cycle notation requires the degree n")
            cycles = [
                [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
                for body in re.findall(r"\(([^()]*)\)", text)
            ]
            return cls.from_cycles([c for c in cycles if c], n)
        perm = cls(tuple(int(x) for x in text.split()))
        if n is not None and perm.degree != n:
            raise ValueError(f"expected degree {n}, got {perm.degree}")
        return perm

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __str__(self) -> str:
        return " ".join(map(str, self.images))

    def cycle_notation(self) -> str:
        cycles = cycle_decomposition(self)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """
    Product ``a*b`` with the left factor applied first.

    >>> a = Permutation.parse("(1 2 3)", 3); b = Permutation.parse("(2 3)", 3)
    >>> compose(a, b).cycle_notation()
    '(1 3)'
    """
    _check_degrees(a, b)
    bi = b.images
    return Permutation(tuple(bi[x - 1] for x in a.images))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a.images, 1):
        inv[x - 1] = i
    return Permutation(tuple(inv))


def conjugate(a: Permutation, g: Permutation) -> Permutation:
    """Return ``g^-1 * a * g``."""
    _check_degrees(a, g)
    return compose(compose(inverse(g), a), g)


def cycle_decomposition(a: Permutation) -> list[tuple[int, ...]]:
    """
    Disjoint cycles of length >= 2, each starting at its minimum, sorted by
    that minimum.

    >>> cycle_decomposition(Permutation.parse("2 1 4 3"))
    [(1, 2), (3, 4)]
    """
    seen = [False] * (a.degree + 1)
    cycles = []
    for start in range(1, a.degree + 1):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = a(start)
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = a(x)
        if len(cyc) > 1:
            cycles.append(tuple(cyc))
    return cycles


def move_set(a: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(a.images, 1) if x != i)


@dataclass(frozen=True, order=True)
class CycleType:
    """Counts ``(a_1, ..., a_n)``: ``a_i`` is the number of ``i``-cycles, fixed points included."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative cycle count in {counts}")
        if sum(i * c for i, c in enumerate(counts, 1)) != len(counts):
            raise ValueError(f"invalid cycle type {counts}: sum of i*a_i != {len(counts)}")

    @property
    def n(self) -> int:
        return len(self.counts)

    @classmethod
    def from_parts(cls, parts: Iterable[int], n: int | None = None) -> CycleType:
        parts = list(parts)
        n = sum(parts) if n is None else n
        counts = [0] * n
        for p in parts:
            if p < 1 or p > n:
                raise ValueError(f"bad cycle length {p} for degree {n}")
            counts[p - 1] += 1
        return cls(tuple(counts))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> CycleType:
        """
        >>> CycleType.parse("1^2 2^1").counts
        (2, 1, 0, 0)
        """
        parts: list[int] = []
        for tok in text.split():
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"bad cycle-type token {tok!r}")
            parts += [int(m.group(1))] * int(m.group(2) or 1)
        total = sum(parts)
        if n is not None and total != n:
            raise ValueError(f"cycle type {text!r} sums to {total}, expected {n}")
        return cls.from_parts(parts)

    def parts(self) -> tuple[int, ...]:
        """The type as a partition of n, largest part first."""
        return tuple(i for i in range(self.n, 0, -1) for _ in range(self.counts[i - 1]))

    def is_identity(self) -> bool:
        return self.counts[0] == self.n

    def __str__(self) -> str:
        return " ".join(f"{i}^{c}" for i, c in enumerate(self.counts, 1) if c)


def cycle_type(a: Permutation) -> CycleType:
    lengths = [len(c) for c in cycle_decomposition(a)]
    fixed = a.degree - sum(lengths)
    return CycleType.from_parts(lengths + [1] * fixed, a.degree)


def class_size(t: CycleType) -> int:
    """``n! / prod(a_i! * i^a_i)`` in exact integer arithmetic."""
    denom = 1
    for i, a in enumerate(t.counts, 1):
        denom *= math.factorial(a) * i**a
    size, rem = divmod(math.factorial(t.n), denom)
    assert rem == 0
    return size


def all_cycle_types(n: int) -> list[CycleType]:
    """Cycle types of S_n, ordered like ``partitions_of`` (reverse lexicographic)."""
    from cayleyspec.characters import partitions_of

    return [CycleType.from_parts(p) for p in partitions_of(n)]


def _check_cap(n: int, cap: int | None) -> None:
    cap = config.ENUMERATION_CAP if cap is None else cap
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the enumeration cap n <= {cap}")


@functools.lru_cache(maxsize=16)
def _group(n: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def enumerate_group(n: int, cap: int | None = None) -> list[Permutation]:
    """All of S_n in lexicographic order of image arrays (index = vertex id)."""
    _check_cap(n, cap)
    return list(_group(n))


def conjugacy_class(t: CycleType, cap: int | None = None) -> frozenset[Permutation]:
    _check_cap(t.n, cap)
    return frozenset(p for p in _group(t.n) if cycle_type(p) == t)


def young_subgroup(n: int, t: Iterable[int]) -> frozenset[Permutation]:
    """Permutations of S_n fixing every point outside ``t``."""
    support = sorted(set(t))
    if any(not 1 <= x <= n for x in support):
        raise ValueError(f"support {support} not inside 1..{n}")
    out = set()
    for vals in itertools.permutations(support):
        images = list(range(1, n + 1))
        for pos, v in zip(support, vals):
            images[pos - 1] = v
        out.add(Permutation(tuple(images)))
    return frozenset(out)


@dataclass(frozen=True)
class GroundPartition:
    """A partition of {1..n} into at least two non-empty blocks."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        object.__setattr__(self, "blocks", blocks)
        if len(blocks) < 2:
            raise ValueError("a ground partition needs at least 2 blocks")
        if any(not b for b in blocks):
            raise ValueError("empty block")
        union = set().union(*blocks)
        if sum(len(b) for b in blocks) != len(union):
            raise ValueError("blocks are not disjoint")
        if union != set(range(1, len(union) + 1)):
            raise ValueError(f"blocks do not cover 1..{len(union)}")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> GroundPartition:
        """
        >>> str(GroundPartition.parse("{1}{2 3 4}"))
        '{1}{2 3 4}'
        """
        bodies = re.findall(r"\{([^{}]*)\}", text)
        return cls(tuple(frozenset(int(x) for x in re.split(r"[\s,]+", b.strip()) if x) for b in bodies))

    def __str__(self) -> str:
        return "".join("{" + " ".join(map(str, sorted(b))) + "}" for b in self.blocks)


def two_block_partitions(n: int) -> list[GroundPartition]:
    """Every partition of {1..n} into exactly two blocks (block with 1 listed first)."""
    out = []
    rest = list(range(2, n + 1))
    for size in range(0, n - 1):
        for extra in itertools.combinations(rest, size):
            first = frozenset((1, *extra))
            out.append(GroundPartition((first, frozenset(range(1, n + 1)) - first)))
    return out


@dataclass(frozen=True)
class CosetSystem:
    """Right cosets ``S_n(T) * alpha_i`` with lexicographically smallest representatives."""

    n: int
    subgroup_support: frozenset[int]
    representatives: tuple[Permutation, ...]

    @property
    def index(self) -> int:
        return len(self.representatives)

    def coset(self, i: int) -> frozenset[Permutation]:
        alpha = self.representatives[i]
        return frozenset(compose(h, alpha) for h in young_subgroup(self.n, self.subgroup_support))

    def block_ids(self, images: np.ndarray) -> np.ndarray:
        """Coset index of each row of a (N, n) array of 1-based image arrays."""
        canon = canonical_coset_members(images, self.subgroup_support)
        rep_ranks = rank_images(np.array([r.images for r in self.representatives]))
        ranks = rank_images(canon)
        idx = np.searchsorted(rep_ranks, ranks)
        assert np.array_equal(rep_ranks[idx], ranks)
        return idx

    def block_of(self, p: Permutation) -> int:
        return int(self.block_ids(np.array([p.images]))[0])


def canonical_coset_members(images: np.ndarray, support: Iterable[int]) -> np.ndarray:
    # (h*alpha)(i) = alpha(h(i)): h only permutes alpha's entries at positions in T.
    cols = sorted(support)
    out = np.array(images, copy=True)
    if cols:
        idx = np.array(cols) - 1
        out[:, idx] = np.sort(out[:, idx], axis=1)
    return out


def right_cosets(n: int, t: Iterable[int], cap: int | None = None) -> CosetSystem:
    _check_cap(n, cap)
    support = frozenset(t)
    if any(not 1 <= x <= n for x in support):
        raise ValueError(f"support {sorted(support)} not inside 1..{n}")
    cols = sorted(support)
    reps = [p for p in _group(n) if all(p(a) < p(b) for a, b in zip(cols, cols[1:]))]
    assert len(reps) == math.factorial(n) // math.factorial(len(support))
    return CosetSystem(n, support, tuple(reps))


def coset_vector(c: CosetSystem, i: int, k: int) -> tuple[int, ...]:
    """The k-tuple ``(alpha_i(1), ..., alpha_i(k))`` naming coset ``i`` when ``T = {k+1..n}``."""
    if c.subgroup_support != frozenset(range(k + 1, c.n + 1)):
        raise ValueError(f"coset system support {sorted(c.subgroup_support)} is not {{{k + 1}..{c.n}}}")
    return c.representatives[i].images[:k]


# -- vectorised whole-group helpers -------------------------------------------


@functools.lru_cache(maxsize=16)
def _group_array(n: int) -> np.ndarray:
    arr = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int64).reshape(-1, n)
    arr.setflags(write=False)
    return arr


def group_array(n: int, cap: int | None = None) -> np.ndarray:
    """S_n as a read-only (n!, n) array of image arrays in lexicographic order."""
    _check_cap(n, cap)
    return _group_array(n)


def rank_images(images: np.ndarray) -> np.ndarray:
    """Lexicographic rank (Lehmer code) of each row of a (N, n) 1-based image array."""
    images = np.asarray(images, dtype=np.int64)
    n = images.shape[1]
    ranks = np.zeros(images.shape[0], dtype=np.int64)
    for i in range(n):
        smaller_later = (images[:, i + 1:] < images[:, i:i + 1]).sum(axis=1)
        ranks += smaller_later * math.factorial(n - 1 - i)
    return ranks
