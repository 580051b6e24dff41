"""
Command-line front end.

    cayleyspec cayley --n 4 --genset cy:2 --mode integrality
    cayleyspec arrangement --n 4 --k 2 --r 1 --mode quotient-check
    cayleyspec charset --n 4
    cayleyspec scan --max-n 5
    cayleyspec verify --max-n 5

Exit codes: 0 success, 1 error or failed check, 2 undecided verdict.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

from cayleyspec import cache, config
from cayleyspec.errors import CapExceededError, GensetParseError, InvariantViolation
from cayleyspec.io import arrangement_edgelist, atomic_write, cayley_edgelist, spectrum_json


class CommandError(Exception):
    pass


def _spectrum_csv(spectrum) -> str:
    lines = ["value,multiplicity"]
    lines += [f"{v['value']},{v['multiplicity']}" for v in spectrum.to_json_obj()]
    return "\n".join(lines) + "\n"


def _cayley_spectrum(n, s, max_vertices):
    from cayleyspec.cayley import build_cayley, spectrum_exact, spectrum_numeric
    from cayleyspec.characters import normal_cayley_spectrum
    from cayleyspec.spectrum import Spectrum

    if s.normal and s.elements:
        return normal_cayley_spectrum(n, s), "characters"
    g = build_cayley(n, s, max_vertices=max_vertices)
    if g.vertex_count <= config.EXACT_BUDGET:
        res = spectrum_exact(g)
        if isinstance(res, Spectrum):
            return res, "exact"
    return spectrum_numeric(g), "numeric"


def run_cayley(args) -> tuple[int, str]:
    from cayleyspec.cayley import build_cayley, verify_integrality
    from cayleyspec.genset import format_genset, parse_genset

    s = parse_genset(args.genset, args.n)
    spec = format_genset(s)
    if args.mode == "export":
        g = build_cayley(args.n, s, max_vertices=args.max_vertices)
        return 0, cayley_edgelist(g)
    if args.mode == "spectrum":
        spectrum, method = _cayley_spectrum(args.n, s, args.max_vertices)
        if args.format == "csv":
            return 0, _spectrum_csv(spectrum)
        return 0, spectrum_json(args.n, spec, spectrum, method=method)
    # integrality
    if s.normal and s.elements:
        spectrum, _ = _cayley_spectrum(args.n, s, args.max_vertices)
        obj = {"n": args.n, "genset": spec, "verdict": "integral", "exact": True, "method": "characters",
               "spectrum": spectrum.to_json_obj()}
        return 0, json.dumps(obj, indent=2) + "\n"
    g = build_cayley(args.n, s, max_vertices=args.max_vertices)
    v = verify_integrality(g)
    obj = {"n": args.n, "genset": spec, "verdict": v.verdict, "exact": v.exact}
    if v.max_deviation is not None:
        obj["max_deviation"] = f"{v.max_deviation:.3e}"
    if v.certificate is not None:
        obj["certificate"] = {"check": v.certificate.check, "detail": v.certificate.detail}
    if v.spectrum is not None:
        obj["spectrum"] = v.spectrum.to_json_obj()
    return (2 if v.verdict == "undecided" else 0), json.dumps(obj, indent=2) + "\n"


def run_arrangement(args) -> tuple[int, str]:
    from cayleyspec import arrangement as arr
    from cayleyspec.spectrum import matrix_integrality

    n, k, r = args.n, args.k, args.r
    budget = args.max_vertices or config.ARRANGEMENT_BUDGET
    if args.mode == "export":
        return 0, arrangement_edgelist(arr.build_arrangement(n, k, r, budget))
    if args.mode == "spectrum":
        a = arr.build_arrangement(n, k, r, budget)
        v = matrix_integrality(a.adjacency, numeric_budget=budget)
        if v.spectrum is None:
            raise CommandError(f"spectrum of A({n},{k},{r}) is not integral; certificate: {v.certificate.detail}")
        label = f"arrangement {n} {k} {r}"
        if args.format == "csv":
            return 0, _spectrum_csv(v.spectrum)
        return 0, spectrum_json(n, label, v.spectrum, k=k, r=r, observational=r >= 2)
    if args.mode == "quotient-check":
        check = arr.verify_quotient_identity(n, k, r)
        text = str(check) + "\n"
        if check.counterexample:
            text += f"counterexample (i, j, q_ij, expected): {check.counterexample}\n"
        return (0 if check.ok else 1), text
    if args.mode == "unique-check":
        q = arr.unique_neighbor_quotient(n, k)
        ok = bool((q.entries == arr.build_arrangement(n, k, 1, budget).adjacency).all())
        return (0 if ok else 1), f"Q == A : {'true' if ok else 'false'}\n"
    # lift
    rep = arr.lift_eigenvalues(n, k, r)
    obj = {
        "n": n, "k": k, "r": r, "factor": rep.factor, "ok": rep.ok, "exact": rep.exact,
        "partial": rep.partial, "note": rep.note,
        "containment": [
            {"eigenvalue": lam, "lifted": lifted, "multiplicity": m, "host_multiplicity": hm}
            for lam, (lifted, m, hm) in rep.containment.items()
        ],
    }
    return (0 if rep.ok else 1), json.dumps(obj, indent=2, default=str) + "\n"


def run_charset(args) -> tuple[int, str]:
    from cayleyspec.characters import character_table

    return 0, character_table(args.n).to_csv()


def run_scan(args) -> tuple[int, str]:
    from cayleyspec.arrangement import integrality_scan, scan_to_csv

    rows = integrality_scan(args.max_n, budget=args.max_vertices or config.ARRANGEMENT_BUDGET)
    return 0, scan_to_csv(rows)


def run_verify(args) -> tuple[int, str]:
    from cayleyspec.verify import report_json, run_suite

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        records = run_suite(args.max_n, args.seed)
    failed = any(r["status"] == "FAIL" for r in records)
    return (1 if failed else 0), report_json(records, args.max_n, args.seed)


RUNNERS = {
    "cayley": run_cayley,
    "arrangement": run_arrangement,
    "charset": run_charset,
    "scan": run_scan,
    "verify": run_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "edgelist"], default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--cache", choices=list(cache.POLICIES), default="use")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-vertices", type=int, default=None)

    parser = argparse.ArgumentParser(prog="cayleyspec", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cayley", parents=[common], help="Cayley graphs of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genset", required=True, help='e.g. "cy:2", "m:2,1", "classes:1^2 2^1", "nicesep:1^2 2^1;{1}{2 3 4}"')
    p.add_argument("--mode", choices=["spectrum", "export", "integrality"], default="spectrum")

    p = sub.add_parser("arrangement", parents=[common], help="arrangement graphs A(n,k,r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--mode", choices=["spectrum", "export", "quotient-check", "unique-check", "lift"],
                   default="spectrum")

    p = sub.add_parser("charset", parents=[common], help="character table of S_n as CSV")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("scan", parents=[common], help="integrality scan of A(n,k,r)")
    p.add_argument("--max-n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--max-n", type=int, default=5)
    return parser


def _job(args) -> cache.JobDescriptor:
    skip = {"command", "out", "cache", "format"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return cache.JobDescriptor(args.command, params, args.format or "", args.cache)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_vertices is not None and args.command == "cayley" and math.factorial(args.n) > args.max_vertices:
        print(f"error: S_{args.n} has {math.factorial(args.n)} vertices, over --max-vertices {args.max_vertices}",
              file=sys.stderr)
        return 1
    try:
        job = _job(args)
        hit = cache.load(job)
        if hit is not None:
            code, content = hit
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                code, content = RUNNERS[args.command](args)
            cache.store(job, code, content)
    except GensetParseError as e:
        print(f"error: cannot parse generating set: {e}", file=sys.stderr)
        return 1
    except (CapExceededError, CommandError, InvariantViolation, ValueError) as e:
        print(f"error ({args.command}): {e}", file=sys.stderr)
        return 1
    if args.out:
        atomic_write(args.out, content)
    else:
        sys.stdout.write(content)
    return code


if __name__ == "__main__":
    sys.exit(main())
