"""
Desk-scale verification suite.  Each check instance yields one record with
status PASS or FAIL; failing records carry the counterexample.
"""
from __future__ import annotations

import itertools
import json
import math
import random
import warnings

from cayleyspec.arrangement import (
    build_arrangement,
    equitable_quotient,
    lift_eigenvalues,
    unique_neighbor_quotient,
    verify_quotient_identity,
)
from cayleyspec.cayley import build_cayley, commuting_combination_check, spectrum_exact, verify_integrality
from cayleyspec.characters import normal_cayley_spectrum
from cayleyspec.genset import class_union, custom, cy, decompose, m_set, nicely_separated
from cayleyspec.perm import (
    Permutation,
    all_cycle_types,
    compose,
    conjugate,
    cycle_decomposition,
    two_block_partitions,
)
from cayleyspec.spectrum import Spectrum, matrix_integrality

EXACT_SUITE_MAX_N = 6


def _rec(check: str, instance: str, ok: bool, detail: str = "", counterexample=None) -> dict:
    rec = {"check": check, "instance": instance, "status": "PASS" if ok else "FAIL"}
    if detail:
        rec["detail"] = detail
    if not ok and counterexample is not None:
        rec["counterexample"] = counterexample
    return rec


def check_composition(max_n: int, seed: int) -> list[dict]:
    out = []
    a = Permutation.parse("(1 2 3)", 3)
    b = Permutation.parse("(2 3)", 3)
    prod = compose(a, b).cycle_notation()
    out.append(_rec("composition-convention", "(1 2 3)(2 3)", prod == "(1 3)", f"= {prod}"))

    n = min(max(max_n, 3), 7)
    rng = random.Random(seed)
    bad = None
    for _ in range(200):
        x, y, z = (Permutation(tuple(rng.sample(range(1, n + 1), n))) for _ in range(3))
        if compose(compose(x, y), z) != compose(x, compose(y, z)):
            bad = [str(x), str(y), str(z)]
            break
        cyc = cycle_decomposition(x)
        if cyc:
            c = cyc[0]
            lhs = Permutation.from_cycles([c], n)
            if conjugate(lhs, y) != Permutation.from_cycles([tuple(y(i) for i in c)], n):
                bad = [str(x), str(y)]
                break
    out.append(_rec("composition-convention", f"random associativity and conjugation in S_{n}", bad is None,
                    counterexample=bad))
    return out


def check_character_formula(max_n: int) -> list[dict]:
    out = []
    for n in range(2, min(max_n, 5) + 1):
        types = [t for t in all_cycle_types(n) if not t.is_identity()]
        combos = [(t,) for t in types] + list(itertools.combinations(types, 2))
        for combo in combos:
            s = class_union(n, combo)
            via_chars = normal_cayley_spectrum(n, s)
            direct = spectrum_exact(build_cayley(n, s))
            ok = isinstance(direct, Spectrum) and direct == via_chars
            out.append(_rec("character-formula", f"n={n} {s.spec}", ok, str(via_chars),
                            counterexample={"characters": str(via_chars), "matrix": str(direct)}))
    return out


def check_cy_integrality(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        for r in range(2, n + 1):
            v = verify_integrality(build_cayley(n, cy(n, r)))
            ok = v.verdict == "integral" and v.exact
            out.append(_rec("cy-integrality", f"n={n} r={r}", ok, str(v.spectrum),
                            counterexample=v.certificate and v.certificate.detail))
    return out


def check_cy2_eigenvalues(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        spec = spectrum_exact(build_cayley(n, cy(n, 2)))
        if not isinstance(spec, Spectrum):
            out.append(_rec("cy2-eigenvalues", f"n={n}", False, counterexample=spec.detail))
            continue
        if n in (2, 3):
            out.append(_rec("cy2-zero-absent", f"n={n}", spec.multiplicity(0) == 0, str(spec),
                            counterexample=str(spec)))
        if n < 4:
            continue
        missing = []
        for l in range(1, n):
            need = math.comb(n - 2, l - 1)
            for v in (n - l, -(n - l)):
                if spec.multiplicity(v) < need:
                    missing.append(f"{v}: {spec.multiplicity(v)} < {need}")
        need0 = math.comb(n - 1, 2)
        if spec.multiplicity(0) < need0:
            missing.append(f"0: {spec.multiplicity(0)} < {need0}")
        out.append(_rec("cy2-eigenvalue-bounds", f"n={n}", not missing, str(spec), counterexample=missing))
    return out


def nicesep_instance(s) -> tuple[bool, dict]:
    """Integrality, reconstruction, and commuting-combination checks for one nicely separated set."""
    n = s.degree
    v = verify_integrality(build_cayley(n, s))
    s0, parts = decompose(s)
    union_parts = frozenset().union(*(p.elements for p in parts)) if parts else frozenset()
    rebuilt = s0.elements - union_parts == s.elements
    reports = []
    for p, q in itertools.combinations(parts, 2):
        reports.append(("parts", commuting_combination_check(p, q, n)))
    if union_parts:
        reports.append(("classes-minus-parts", commuting_combination_check(s0, custom(n, union_parts), n)))
    comm_ok = all(r.passed for _, r in reports)
    ok = v.verdict == "integral" and v.exact and rebuilt and comm_ok
    info = {
        "verdict": v.verdict,
        "reconstruction": rebuilt,
        "commuting": [
            {"pair": name, "a": r.commute, "b": r.sum_in_sumset, "c": r.difference_in_diffset,
             "d": r.identity, "kind": r.identity_kind}
            for name, r in reports
        ],
    }
    return ok, info


def check_nicely_separated(max_n: int) -> list[dict]:
    out = []
    for n in range(3, min(max_n, 5) + 1):
        for t in all_cycle_types(n):
            if t.is_identity():
                continue
            for p in two_block_partitions(n):
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    s = nicely_separated(n, [t], p)
                ok, info = nicesep_instance(s)
                out.append(_rec("nicely-separated-integrality", f"n={n} {s.spec}", ok, counterexample=info))
    return out


def check_coset_quotient(max_n: int) -> list[dict]:
    out = []
    for n in range(2, min(max_n, 5) + 1):
        for k in range(1, n):
            for r in range(1, k + 1):
                inst = f"n={n} k={k} r={r}"
                q = equitable_quotient(n, k, r)  # raises if not equitable
                ident = verify_quotient_identity(n, k, r)
                m_count = len(m_set(n, k, r))
                deg_ok = build_arrangement(n, k, r).degree * math.factorial(n - k) == m_count
                lift = lift_eigenvalues(n, k, r)
                ok = ident.ok and deg_ok and lift.ok and q.entries.shape[0] == math.perm(n, k)
                out.append(_rec("coset-quotient", inst, ok, str(ident),
                                counterexample={"identity": ident.counterexample, "degree_ok": deg_ok,
                                                "lift_ok": lift.ok}))
    return out


def check_unique_neighbor(max_n: int) -> list[dict]:
    out = []
    for n in range(3, min(max_n, 5) + 1):
        for k in range(2, n):
            q = unique_neighbor_quotient(n, k)
            a = build_arrangement(n, k, 1)
            ok = bool((q.entries == a.adjacency).all())
            out.append(_rec("unique-neighbour-quotient", f"n={n} k={k}", ok, "Q == A" if ok else "Q != A"))
    return out


def check_arrangement_r1(max_n: int) -> list[dict]:
    out = []
    for n in range(2, max_n + 1):
        spec = matrix_integrality(build_arrangement(n, 1, 1).adjacency).spectrum
        expected = Spectrum.from_counts({n - 1: 1, -1: n - 1})
        out.append(_rec("arrangement-complete", f"n={n} k=1", spec == expected, str(spec), str(spec)))
    for k in range(1, max_n + 1):
        spec = matrix_integrality(build_arrangement(k, k, 1).adjacency).spectrum
        expected = Spectrum.from_counts({0: math.factorial(k)})
        out.append(_rec("arrangement-edgeless", f"n=k={k}", spec == expected, str(spec), str(spec)))
    for n in range(3, max_n + 1):
        for k in range(2, n):
            v = matrix_integrality(build_arrangement(n, k, 1).adjacency)
            ok = v.verdict == "integral" and v.exact
            out.append(_rec("arrangement-r1-integrality", f"n={n} k={k}", ok, str(v.spectrum),
                            counterexample=v.certificate and v.certificate.detail))
    return out


def run_suite(max_n: int, seed: int = 0) -> list[dict]:
    if not 2 <= max_n <= EXACT_SUITE_MAX_N:
        raise ValueError(f"the exact suite supports 2 <= max_n <= {EXACT_SUITE_MAX_N}")
    records = []
    records += check_composition(max_n, seed)
    records += check_character_formula(max_n)
    records += check_cy_integrality(max_n)
    records += check_cy2_eigenvalues(max_n)
    records += check_nicely_separated(max_n)
    records += check_coset_quotient(max_n)
    records += check_unique_neighbor(max_n)
    records += check_arrangement_r1(max_n)
    return records


def report_json(records: list[dict], max_n: int, seed: int) -> str:
    passed = sum(r["status"] == "PASS" for r in records)
    obj = {
        "max_n": max_n,
        "seed": seed,
        "summary": {"pass": passed, "fail": len(records) - passed},
        "results": records,
    }
    return json.dumps(obj, indent=2, default=str) + "\n"
