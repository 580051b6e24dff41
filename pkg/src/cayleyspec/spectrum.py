"""
Spectra of symmetric integer matrices: a numeric route (dense symmetric
eigensolver) and an exact route that certifies integer spectra.

The exact route rounds numeric eigenvalues to integer candidates, takes the
exact nullity of ``A - m*I`` for each candidate over the integers (equal to the
nullity over the rationals), and accepts only when the nullities add up to the
matrix size and the first three power-sum moments match ``trace(A^p)``.
Exact ranks and characteristic polynomials come from FLINT.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

import flint
import numpy as np
import scipy.linalg
import scipy.sparse as sp

from cayleyspec import config
from cayleyspec.errors import CapExceededError

Value = Union[int, Fraction, float]


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue/multiplicity pairs, sorted by decreasing eigenvalue."""

    pairs: tuple[tuple[Value, int], ...]
    exact: bool

    def __post_init__(self):
        pairs = tuple(sorted(((v, int(m)) for v, m in self.pairs if m), key=lambda p: p[0], reverse=True))
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_counts(cls, counts: Mapping[Value, int], exact: bool = True) -> Spectrum:
        return cls(tuple(counts.items()), exact)

    @classmethod
    def from_eigenvalues(cls, eigenvalues, tol: float = config.AGGREGATION_TOL) -> Spectrum:
        """Cluster a list of floats; consecutive sorted values within ``tol`` merge."""
        vals = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
        pairs: list[tuple[float, int]] = []
        cluster: list[float] = []
        for v in vals:
            if cluster and cluster[-1] - v > tol:
                pairs.append((float(np.mean(cluster)), len(cluster)))
                cluster = []
            cluster.append(float(v))
        if cluster:
            pairs.append((float(np.mean(cluster)), len(cluster)))
        return cls(tuple(pairs), exact=False)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.pairs)

    @property
    def values(self) -> list[Value]:
        return [v for v, _ in self.pairs]

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def multiplicity(self, value: Value, tol: float = config.SCREEN_TOL) -> int:
        if self.exact:
            return self.as_dict().get(value, 0)
        return sum(m for v, m in self.pairs if abs(v - value) <= tol)

    def __contains__(self, value) -> bool:
        return self.multiplicity(value) > 0

    def is_integral(self) -> bool:
        return self.exact and all(Fraction(v).denominator == 1 for v in self.values)

    def scaled(self, factor: int) -> Spectrum:
        return Spectrum(tuple((v * factor, m) for v, m in self.pairs), self.exact)

    def repeated(self, copies: int) -> Spectrum:
        """Spectrum of a disjoint union of ``copies`` copies."""
        return Spectrum(tuple((v, m * copies) for v, m in self.pairs), self.exact)

    def moment(self, p: int):
        return sum(m * v**p for v, m in self.pairs)

    def to_json_obj(self) -> list[dict]:
        out = []
        for v, m in self.pairs:
            if self.exact:
                v = Fraction(v)
                value = int(v) if v.denominator == 1 else str(v)
            else:
                value = f"{v:.12f}"
            out.append({"value": value, "multiplicity": m})
        return out

    def __str__(self) -> str:
        return "{" + ", ".join(f"{v}:{m}" for v, m in self.pairs) + "}"


@dataclass(frozen=True)
class NonIntegralityCertificate:
    """Why a candidate integer spectrum was rejected, and what was checked."""

    check: str
    detail: str
    nullities: dict = field(default_factory=dict)


def _dense(a) -> np.ndarray:
    return a.toarray() if sp.issparse(a) else np.asarray(a)


def numeric_eigenvalues(a, budget: int | None = None) -> np.ndarray:
    budget = config.DENSE_BUDGET if budget is None else budget
    if a.shape[0] > budget:
        raise CapExceededError(
            f"{a.shape[0]} vertices exceed the dense eigensolver budget {budget}; "
            "use the character formula or a structural route"
        )
    if a.shape[0] == 0:
        return np.zeros(0)
    return scipy.linalg.eigh(_dense(a).astype(float), eigvals_only=True, check_finite=False)


def numeric_spectrum(a, budget: int | None = None, tol: float = config.AGGREGATION_TOL) -> Spectrum:
    return Spectrum.from_eigenvalues(numeric_eigenvalues(a, budget), tol)


def to_fmpz(a) -> flint.fmpz_mat:
    d = _dense(a)
    return flint.fmpz_mat(d.shape[0], d.shape[1], [int(x) for x in d.ravel()])


def nullity(a, value: int, mat: flint.fmpz_mat | None = None) -> int:
    """Exact dimension of the kernel of ``a - value*I``."""
    n = a.shape[0]
    mat = to_fmpz(a) if mat is None else mat
    shifted = flint.fmpz_mat(mat)
    for i in range(n):
        shifted[i, i] -= value
    return n - shifted.rank()


def trace_powers(a, p_max: int = 3) -> list[int]:
    """``[trace(A^1), ..., trace(A^p_max)]`` in exact integer arithmetic."""
    m = sp.csr_matrix(a, dtype=np.int64)
    out = []
    power = sp.identity(m.shape[0], dtype=np.int64, format="csr")
    for _ in range(p_max):
        power = power @ m
        out.append(int(power.diagonal().astype(object).sum()))
    return out


def exact_integer_spectrum(a, numeric: np.ndarray | None = None) -> Spectrum | NonIntegralityCertificate:
    n = a.shape[0]
    if n == 0:
        return Spectrum((), exact=True)
    if numeric is None:
        numeric = numeric_eigenvalues(a, budget=max(n, config.DENSE_BUDGET))
    candidates = sorted({int(round(x)) for x in numeric}, reverse=True)
    mat = to_fmpz(a)
    nullities = {m: nullity(a, m, mat) for m in candidates}
    if sum(nullities.values()) != n:
        return NonIntegralityCertificate(
            "multiplicity-sum",
            f"integer candidates account for {sum(nullities.values())} of {n} eigenvalues",
            nullities,
        )
    spec = Spectrum.from_counts(nullities, exact=True)
    traces = trace_powers(a, 3)
    for p, tr in enumerate(traces, 1):
        if spec.moment(p) != tr:
            return NonIntegralityCertificate(
                f"moment-{p}", f"sum mult*m^{p} = {spec.moment(p)} but trace(A^{p}) = {tr}", nullities
            )
    return spec


def characteristic_factors(a) -> list[tuple[list[int], int]]:
    """Irreducible factors of the characteristic polynomial as (coefficients low->high, exponent)."""
    _, factors = to_fmpz(a).charpoly().factor()
    return [([int(c) for c in f.coeffs()], e) for f, e in factors]


@dataclass(frozen=True)
class IntegralityVerdict:
    verdict: str  # "integral" | "non_integral" | "undecided"
    exact: bool
    spectrum: Spectrum | None = None
    certificate: NonIntegralityCertificate | None = None
    max_deviation: float | None = None


def matrix_integrality(a, exact_budget: int | None = None, numeric_budget: int | None = None) -> IntegralityVerdict:
    """
    Decide whether a symmetric integer matrix has an integral spectrum.

    Inside the exact budget the answer is always exact: the candidate route
    either certifies the spectrum or the characteristic polynomial is factored
    over the integers, and a non-linear irreducible factor is the witness.
    Beyond it only a numeric screen is available and ``non_integral`` is never
    returned.
    """
    exact_budget = config.EXACT_BUDGET if exact_budget is None else exact_budget
    numeric_budget = config.DENSE_BUDGET if numeric_budget is None else numeric_budget
    n = a.shape[0]
    if n > numeric_budget:
        return IntegralityVerdict("undecided", exact=False)
    eig = numeric_eigenvalues(a, numeric_budget)
    dev = float(np.max(np.abs(eig - np.round(eig)))) if n else 0.0
    if n > exact_budget:
        if dev <= config.SCREEN_TOL:
            return IntegralityVerdict("integral", False, Spectrum.from_eigenvalues(eig), max_deviation=dev)
        return IntegralityVerdict("undecided", False, Spectrum.from_eigenvalues(eig), max_deviation=dev)
    result = exact_integer_spectrum(a, eig)
    if isinstance(result, Spectrum):
        return IntegralityVerdict("integral", True, result, max_deviation=dev)
    factors = characteristic_factors(a)
    nonlinear = [(c, e) for c, e in factors if len(c) > 2]
    if not nonlinear:
        # every factor is x - m (monic), so the roots are integers
        counts = Counter()
        for c, e in factors:
            counts[-c[0]] += e
        return IntegralityVerdict("integral", True, Spectrum.from_counts(counts), max_deviation=dev)
    c, e = nonlinear[0]
    cert = NonIntegralityCertificate(
        "charpoly-factor",
        f"characteristic polynomial has irreducible factor of degree {len(c) - 1} "
        f"(coefficients low->high {c}) with exponent {e}",
        result.nullities,
    )
    return IntegralityVerdict("non_integral", True, certificate=cert, max_deviation=dev)
