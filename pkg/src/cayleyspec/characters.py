"""
Irreducible characters of S_n by the Murnaghan-Nakayama rule, and the
character formula for spectra of normal Cayley graphs.

Partitions are plain tuples of positive integers, largest part first.
Character values are computed on beta-sets: removing a border strip of
length m from a partition is the same as sliding one bead of its beta-set
down by m onto an empty position, with sign (-1)^(beads jumped over).
"""
from __future__ import annotations

import csv
import functools
import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from cayleyspec import config
from cayleyspec.errors import CapExceededError, InvariantViolation
from cayleyspec.perm import CycleType, class_size, cycle_type
from cayleyspec.spectrum import Spectrum

Partition = tuple[int, ...]


def partitions_of(n: int, max_part: int | None = None) -> list[Partition]:
    """
    All partitions of n in reverse lexicographic order.

    >>> partitions_of(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n == 0:
        return [()]
    max_part = n if max_part is None else max_part
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first, *rest))
    return out


def format_partition(p: Partition) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def _as_parts(mu: CycleType | Iterable[int]) -> Partition:
    if isinstance(mu, CycleType):
        return mu.parts()
    return tuple(sorted((int(x) for x in mu), reverse=True))


@functools.lru_cache(maxsize=None)
def _mn(beta: frozenset[int], parts: Partition) -> int:
    # parts are removed largest first; beta-set encodes the remaining shape
    if not parts:
        return 1
    m, rest = parts[0], parts[1:]
    total = 0
    for b in beta:
        target = b - m
        if target < 0 or target in beta:
            continue
        jumped = sum(1 for c in beta if target < c < b)
        sign = -1 if jumped % 2 else 1
        total += sign * _mn((beta - {b}) | {target}, rest)
    return total


def character_value(lam: Partition, mu: CycleType | Iterable[int]) -> int:
    """
    chi_lam evaluated on the class of cycle type ``mu``.

    >>> character_value((2, 1), (1, 1, 1))
    2
    >>> character_value((1, 1, 1), (2, 1))
    -1
    """
    lam = tuple(lam)
    parts = _as_parts(mu)
    if sum(lam) != sum(parts):
        raise ValueError(f"size mismatch: |lambda|={sum(lam)}, |mu|={sum(parts)}")
    ell = len(lam)
    beta = frozenset(lam[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, parts)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    rows: tuple[Partition, ...]
    columns: tuple[CycleType, ...]
    values: tuple[tuple[int, ...], ...]

    @property
    def dims(self) -> tuple[int, ...]:
        ident = self.columns.index(CycleType.from_parts([1] * self.n))
        return tuple(row[ident] for row in self.values)

    def value(self, lam: Partition, mu: CycleType) -> int:
        return self.values[self.rows.index(tuple(lam))][self.columns.index(mu)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition", *(str(c) for c in self.columns)])
        for lam, row in zip(self.rows, self.values):
            w.writerow([format_partition(lam), *row])
        return buf.getvalue()


def character_table(n: int, cap: int | None = None) -> CharacterTable:
    cap = config.CHARACTER_CAP if cap is None else cap
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the character-table cap n <= {cap}")
    if n < 1:
        raise ValueError("n must be positive")
    rows = tuple(partitions_of(n))
    columns = tuple(CycleType.from_parts(p) for p in rows)
    values = tuple(tuple(character_value(lam, mu) for mu in columns) for lam in rows)
    return CharacterTable(n, rows, columns, values)


def normal_cayley_spectrum(n: int, s) -> Spectrum:
    """
    Spectrum of a normal Cayley graph on S_n from its irreducible characters.

    ``s`` is a :class:`~cayleyspec.genset.GeneratingSet` closed under
    conjugation.  Each partition lam contributes the eigenvalue
    ``sum_{t in s} chi_lam(t) / chi_lam(1)`` with multiplicity ``chi_lam(1)^2``.
    """
    from cayleyspec.genset import is_normal

    if s.degree != n:
        raise ValueError(f"generating set has degree {s.degree}, expected {n}")
    if not is_normal(s):
        raise ValueError("generating set is not closed under conjugation; use the numeric/exact matrix path")
    if any(t.is_identity() for t in map(cycle_type, s.elements)):
        raise ValueError("generating set contains the identity")

    type_counts = Counter(cycle_type(t) for t in s.elements)
    for t, c in type_counts.items():
        if c != class_size(t):
            raise InvariantViolation(f"class {t} only partially present ({c} of {class_size(t)})")

    table = character_table(n)
    eig: Counter = Counter()
    for lam, dim in zip(table.rows, table.dims):
        total = sum(class_size(t) * table.value(lam, t) for t in type_counts)
        eta = Fraction(total, dim)
        if eta.denominator != 1:
            raise InvariantViolation(f"non-integer eigenvalue {eta} for lambda={lam}")
        eig[int(eta)] += dim * dim
    return Spectrum.from_counts(eig, exact=True)
