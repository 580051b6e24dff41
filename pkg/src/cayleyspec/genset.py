"""
Generating sets of S_n: conjugacy-class unions, Cy(r), M(r), and the
"nicely separated" sets ``(union of classes) minus (union of S_n(T_i))``.

Sets are stored explicitly as frozensets of permutations, so every predicate
below is plain set algebra.  The CLI mini-language is handled by
:func:`parse_genset` / :func:`format_genset`::

    cy:2
    m:2,1
    classes:1^2 2^1|1^1 3^1
    nicesep:1^2 2^1;{1}{2 3 4}
"""
from __future__ import annotations

import itertools
import re
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from cayleyspec.errors import CapExceededError, GensetParseError
from cayleyspec.perm import (
    CycleType,
    GroundPartition,
    Permutation,
    compose,
    conjugacy_class,
    conjugate,
    cycle_type,
    enumerate_group,
    inverse,
    move_set,
)


@dataclass(frozen=True)
class GeneratingSet:
    degree: int
    elements: frozenset[Permutation]
    inverse_closed: bool
    normal: bool
    provenance: str  # cy | m | class-union | nicesep | custom | decomposition-part
    nicely_separated: GroundPartition | None = None
    spec: str = ""

    def __post_init__(self):
        if any(not move_set(s) for s in self.elements):
            raise ValueError("a generating set may not contain the identity")
        if any(s.degree != self.degree for s in self.elements):
            raise ValueError("element degree differs from generating-set degree")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def cycle_types(self) -> list[CycleType]:
        return sorted({cycle_type(s) for s in self.elements})


def is_inverse_closed(s: GeneratingSet | Iterable[Permutation]) -> bool:
    elements = s.elements if isinstance(s, GeneratingSet) else frozenset(s)
    return all(inverse(x) in elements for x in elements)


def _adjacent_transpositions(n: int) -> list[Permutation]:
    return [Permutation.from_cycles([(i, i + 1)], n) for i in range(1, n)]


def is_normal(s: GeneratingSet) -> bool:
    """Closure under conjugation, tested against the adjacent transpositions (they generate S_n)."""
    gens = _adjacent_transpositions(s.degree)
    return all(conjugate(x, g) in s.elements for x in s.elements for g in gens)


def are_commutative(s1: GeneratingSet | Iterable[Permutation], s2: GeneratingSet | Iterable[Permutation], n: int) -> bool:
    """Whether the two element sums commute in the group algebra of S_n."""
    a = s1.elements if isinstance(s1, GeneratingSet) else frozenset(s1)
    b = s2.elements if isinstance(s2, GeneratingSet) else frozenset(s2)
    if any(x.degree != n for x in itertools.chain(a, b)):
        raise ValueError(f"elements must have degree {n}")
    left = Counter(compose(x, y) for x in a for y in b)
    right = Counter(compose(y, x) for x in a for y in b)
    return left == right


def _make(n: int, elements: Iterable[Permutation], provenance: str, spec: str, partition=None) -> GeneratingSet:
    elements = frozenset(elements)
    if not elements:
        warnings.warn(f"generating set {spec or provenance} is empty (edgeless Cayley graph)", stacklevel=3)
    probe = GeneratingSet(n, elements, False, False, provenance, partition, spec)
    return GeneratingSet(n, elements, is_inverse_closed(elements), is_normal(probe), provenance, partition, spec)


def cy(n: int, r: int) -> GeneratingSet:
    """All r-cycles that move the point 1."""
    if not 2 <= r <= n:
        raise ValueError(f"need 2 <= r <= n, got r={r}, n={n}")
    t = CycleType.from_parts([r] + [1] * (n - r))
    elements = [p for p in conjugacy_class(t) if p(1) != 1]
    return _make(n, elements, "cy", f"cy:{r}")


def m_set(n: int, k: int, r: int) -> GeneratingSet:
    """Permutations moving exactly r of the points 1..k."""
    if not 1 <= r <= k <= n:
        raise ValueError(f"need 1 <= r <= k <= n, got n={n}, k={k}, r={r}")
    prefix = frozenset(range(1, k + 1))
    elements = [p for p in enumerate_group(n) if len(move_set(p) & prefix) == r]
    return _make(n, elements, "m", f"m:{k},{r}")


def _types_spec(types: Iterable[CycleType]) -> str:
    return "|".join(str(t) for t in types)


def _check_types(n: int, types: Iterable[CycleType]) -> list[CycleType]:
    types = sorted(set(types))
    for t in types:
        if t.n != n:
            raise ValueError(f"cycle type {t} is not a type of S_{n}")
        if t.is_identity():
            raise ValueError("the identity type 1^n would put the identity in the generating set")
    return types


def class_union(n: int, types: Iterable[CycleType]) -> GeneratingSet:
    types = _check_types(n, types)
    elements = frozenset().union(*(conjugacy_class(t) for t in types))
    return _make(n, elements, "class-union", f"classes:{_types_spec(types)}")


def t_complement(p: GroundPartition) -> frozenset[Permutation]:
    """Permutations whose support is not contained in a single block."""
    return frozenset(
        g for g in enumerate_group(p.n) if not any(move_set(g) <= b for b in p.blocks)
    )


def _crosses_blocks(g: Permutation, p: GroundPartition) -> bool:
    mv = move_set(g)
    return not any(mv <= b for b in p.blocks)


def nicely_separated(n: int, types: Iterable[CycleType], p: GroundPartition) -> GeneratingSet:
    """Elements of the given classes whose support meets at least two blocks of ``p``."""
    if p.n != n:
        raise ValueError(f"partition covers 1..{p.n}, expected 1..{n}")
    types = _check_types(n, types)
    elements = [g for t in types for g in conjugacy_class(t) if _crosses_blocks(g, p)]
    s = _make(n, elements, "nicesep", f"nicesep:{_types_spec(types)};{p}", partition=p)
    if not s.inverse_closed:
        raise AssertionError(f"{s.spec} is not inverse closed")
    return s


def straddling(n: int, k: int, types: Iterable[CycleType]) -> GeneratingSet:
    """Nicely separated set for the split ``{1..k} | {k+1..n}``."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    p = GroundPartition((frozenset(range(1, k + 1)), frozenset(range(k + 1, n + 1))))
    return nicely_separated(n, types, p)


def decompose(s: GeneratingSet) -> tuple[GeneratingSet, list[GeneratingSet]]:
    """
    Split a nicely separated set as ``S = S0 minus (S_1 u ... u S_l)``.

    ``S0`` is the union of the full classes met by ``S``; ``S_i`` holds the
    elements of those classes supported inside block ``T_i``.  Empty ``S_i``
    are dropped.
    """
    if s.nicely_separated is None:
        raise ValueError("generating set carries no ground partition")
    p = s.nicely_separated
    types = s.cycle_types()
    s0 = class_union(s.degree, types)
    parts = []
    for block in p.blocks:
        elems = [g for g in s0.elements if move_set(g) <= block]
        if elems:
            parts.append(_make(s.degree, elems, "decomposition-part", ""))
    return s0, parts


# -- mini-language ------------------------------------------------------------

_TYPE_TOKEN = re.compile(r"\d+(\^\d+)?")


def _parse_types(body: str, offset: int, n: int) -> list[CycleType]:
    types = []
    pos = offset
    for chunk in body.split("|"):
        parts: list[int] = []
        for m in re.finditer(r"\S+", chunk):
            tok = m.group(0)
            if not _TYPE_TOKEN.fullmatch(tok):
                raise GensetParseError("bad cycle-type token", tok, pos + m.start())
            base, _, exp = tok.partition("^")
            if int(base) < 1 or (exp and int(exp) < 1):
                raise GensetParseError("cycle length and exponent must be positive", tok, pos + m.start())
            parts += [int(base)] * int(exp or 1)
        if sum(parts) != n:
            raise GensetParseError(f"cycle type sums to {sum(parts)}, expected {n}", chunk.strip(), pos)
        types.append(CycleType.from_parts(parts, n))
        pos += len(chunk) + 1
    return types


def _parse_ints(body: str, offset: int, count: int) -> list[int]:
    vals = []
    for m in re.finditer(r"[^,\s]+", body):
        if not m.group(0).isdigit():
            raise GensetParseError("expected an integer", m.group(0), offset + m.start())
        vals.append(int(m.group(0)))
    if len(vals) != count:
        raise GensetParseError(f"expected {count} integer(s)", body, offset)
    return vals


def parse_genset(text: str, n: int) -> GeneratingSet:
    """
    Build a generating set from its mini-language description.

    >>> len(parse_genset("cy:2", 4))
    3
    >>> parse_genset("nicesep:1^1 2^1;{1}{2 3}", 3).spec
    'nicesep:1^1 2^1;{1}{2 3}'
    """
    head, sep, body = text.partition(":")
    if not sep:
        raise GensetParseError("missing ':' after generating-set kind", text, 0)
    off = len(head) + 1
    kind = head.strip()
    try:
        if kind == "cy":
            (r,) = _parse_ints(body, off, 1)
            return cy(n, r)
        if kind == "m":
            k, r = _parse_ints(body, off, 2)
            return m_set(n, k, r)
        if kind == "classes":
            return class_union(n, _parse_types(body, off, n))
        if kind == "nicesep":
            classes, semi, blocks = body.partition(";")
            if not semi:
                raise GensetParseError("missing ';' before partition blocks", body, off)
            boff = off + len(classes) + 1
            if not re.fullmatch(r"\s*(\{[\d\s,]*\}\s*)+", blocks):
                raise GensetParseError("partition blocks must look like {1}{2 3}", blocks, boff)
            try:
                part = GroundPartition.parse(blocks)
            except ValueError as e:
                raise GensetParseError(str(e), blocks, boff) from None
            return nicely_separated(n, _parse_types(classes, off, n), part)
        if kind == "custom":
            elems = []
            for m in re.finditer(r"[^,]+", body):
                tok = m.group(0).strip()
                try:
                    elems.append(Permutation.parse(tok, n))
                except ValueError:
                    raise GensetParseError("bad permutation", tok, off + m.start()) from None
            s = custom(n, elems)
            if not s.inverse_closed:
                raise GensetParseError("custom set is not inverse closed", body, off)
            return s
    except (GensetParseError, CapExceededError):
        raise
    except ValueError as e:
        raise GensetParseError(str(e), text, 0) from None
    raise GensetParseError("unknown generating-set kind (cy, m, classes, nicesep, custom)", kind, 0)


def format_genset(s: GeneratingSet) -> str:
    if s.spec:
        return s.spec
    return "custom:" + ",".join(sorted(p.cycle_notation() for p in s.elements))


def custom(n: int, elements: Iterable[Permutation]) -> GeneratingSet:
    return _make(n, elements, "custom", "")
