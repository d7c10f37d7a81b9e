"""Command-line front end.

Exit codes: 0 pass, 2 parse error, 3 invariant violation, 4 verification or
conformance failure, 5 oracle bound exceeded, 6 perfect algebra required.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .errors import (
    DecompositionError,
    InvariantError,
    NotPerfectError,
    OracleBoundError,
    ParseError,
)
from .evolalg import EvolutionAlgebra, load_algebra, square_analysis
from .field import Field, QQ, field_from_string
from .oracle import DEFAULT_MAX_N, compare_tder, oracle_tder
from .sampling import make_rng
from .taut import TautTriple, decompose_taut, sample_taut, verify_taut
from .tder import render_parametrization, tder_basis

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_FAIL, EXIT_BOUND, EXIT_PERFECT = 0, 2, 3, 4, 5, 6


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def describe_squares(A: EvolutionAlgebra) -> list[str]:
    sq = square_analysis(A)
    lines = []
    for i in range(A.n):
        if sq.zero_square[i]:
            lines.append(f"e{i + 1}^2 = 0")
    for idx in range(A.n - sq.r):
        target = sq.perm[sq.r + idx]
        if sq.zero_square[target]:
            continue
        terms = []
        for k in range(sq.r):
            c = sq.C[k][idx]
            if c:
                src = f"e{sq.perm[k] + 1}^2"
                terms.append(src if c == 1 else f"{c}*{src}")
        lines.append(f"e{target + 1}^2 = " + " + ".join(terms))
    return lines


def cmd_info(args) -> int:
    A = load_algebra(args.path)
    sq = square_analysis(A)
    perfect = sq.r == A.n
    deps = describe_squares(A)
    if args.json:
        print(_dump({
            "dimension": A.n,
            "field": A.field.to_json(),
            "rank": sq.r,
            "perfect": perfect,
            "pivot_order": [p + 1 for p in sq.perm],
            "dependencies": deps,
        }))
    else:
        print(f"dimension {A.n}, field {A.field!r}")
        print(f"rank {sq.r}, {'perfect' if perfect else 'not perfect'}")
        for line in deps:
            print(line)
    return EXIT_OK


def cmd_tder(args) -> int:
    A = load_algebra(args.path)
    if args.oracle:
        res = oracle_tder(A, args.max_n)
        if args.json:
            print(_dump({"dimension": res.dimension, "basis": [t.to_json() for t in res.basis]}))
        else:
            print(f"dimension {res.dimension} (oracle)")
        return EXIT_OK
    sol = tder_basis(A)
    report = compare_tder(A, sol, args.max_n) if args.compare else None
    if args.json:
        out = sol.to_json()
        if report is not None:
            out["conformance"] = report.to_json()
        print(_dump(out))
    else:
        print(f"dimension {sol.dimension}")
        print(render_parametrization(sol))
        if report is not None:
            print(f"conformance {'PASS' if report.passed else 'FAIL'}")
            if report.first_failure:
                print(report.first_failure)
    if report is not None and not report.passed:
        return EXIT_FAIL
    return EXIT_OK


def _parse_sigma(text: str, n: int) -> list[int]:
    try:
        sigma = [int(s) - 1 for s in text.split(",")]
    except ValueError as e:
        raise ParseError(f"bad permutation {text!r}") from e
    if sorted(sigma) != list(range(n)):
        raise InvariantError(f"{text!r} is not a permutation of 1..{n}")
    return sigma


def _load_triple(path, field: Field) -> TautTriple:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from e
    return TautTriple.from_json(field, data)


def cmd_taut(args) -> int:
    A = load_algebra(args.path)
    if args.action == "sample":
        sigma = _parse_sigma(args.sigma, A.n) if args.sigma else None
        triple, dec = sample_taut(A, make_rng(args.seed), sigma)
        text = _dump(triple.to_json())
        if args.output:
            Path(args.output).write_text(text + "\n")
            if args.json:
                print(_dump(dec.to_json()))
        else:
            print(text)
        return EXIT_OK
    if args.triple is None:
        raise ParseError(f"taut {args.action} needs a triple file")
    triple = _load_triple(args.triple, A.field)
    if triple.n != A.n:
        raise InvariantError("triple dimension does not match the algebra")
    if args.action == "verify":
        ok = verify_taut(A, triple)
        print(_dump({"valid": ok}) if args.json else str(ok).lower())
        return EXIT_OK if ok else EXIT_FAIL
    try:
        dec = decompose_taut(A, triple)
    except DecompositionError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        print(_dump(dec.to_json()))
    else:
        d = dec.to_json()
        print("sigma " + " ".join(str(s) for s in d["sigma"]))
        print("lambda " + " ".join(d["lambda"]))
        print("mu " + " ".join(d["mu"]))
    return EXIT_OK


def _parse_params(items) -> dict:
    params = {"alpha": "2", "beta": "3"}
    aliases = {"a": "alpha", "alpha": "alpha", "α": "alpha", "b": "beta", "beta": "beta", "β": "beta"}
    for item in items or []:
        for part in item.split():
            key, sep, val = part.partition("=")
            if not sep or key.strip() not in aliases:
                raise ParseError(f"bad parameter {part!r}, expected alpha=.. or beta=..")
            params[aliases[key.strip()]] = val.strip()
    return params


def cmd_catalog(args) -> int:
    F = field_from_string(args.field) if args.field else QQ
    params = _parse_params(args.param)
    params = {k: F.parse(v) for k, v in params.items()}
    rows = []
    failed = 0
    for name in catalog.NAMES:
        A = catalog.instantiate(name, params, F)
        exp = catalog.expected_tder(name, params, F)
        sol = tder_basis(A)
        problems = exp.failures(sol)
        rep = compare_tder(A, sol)
        if not rep.passed:
            problems.append(rep.first_failure or "conformance failure")
        ok = not problems
        failed += not ok
        rows.append({
            "name": name,
            "structure_matrix": A.M.to_json(),
            "perfect": A.is_perfect(),
            "expected_dimension": exp.dimension,
            "dimension": sol.dimension,
            "oracle_dimension": rep.oracle_dimension,
            "pass": ok,
            "problems": problems,
        })
    if args.json:
        print(_dump({"field": F.to_json(), "parameters": {k: str(v) for k, v in params.items()},
                     "entries": rows, "passed": len(rows) - failed, "total": len(rows)}))
    else:
        for r in rows:
            status = "PASS" if r["pass"] else "FAIL"
            print(f"{r['name']:<5} dim {r['dimension']:>2} (expected {r['expected_dimension']:>2}, "
                  f"oracle {r['oracle_dimension']:>2})  {status}")
            for p in r["problems"]:
                print(f"      {p}")
        print(f"{len(rows) - failed}/{len(rows)} PASS")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")

    parser = argparse.ArgumentParser(prog="ternalg", parents=[common],
                                     description="Ternary derivations and automorphisms of evolution algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="rank, perfectness and square dependencies")
    p.add_argument("path")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("tder", parents=[common], help="basis of the ternary derivation algebra")
    p.add_argument("path")
    p.add_argument("--oracle", action="store_true", help="use the brute-force solver")
    p.add_argument("--compare", action="store_true", help="cross-check against the brute-force solver")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="oracle dimension bound")
    p.set_defaults(func=cmd_tder)

    p = sub.add_parser("taut", parents=[common], help="ternary automorphisms of perfect algebras")
    p.add_argument("action", choices=["sample", "verify", "decompose"])
    p.add_argument("path", help="algebra JSON")
    p.add_argument("triple", nargs="?", help="triple JSON (verify, decompose)")
    p.add_argument("--sigma", help="permutation for sample, 1-indexed, e.g. 2,1")
    p.add_argument("-o", "--output", help="write the sampled triple here")
    p.set_defaults(func=cmd_taut)

    p = sub.add_parser("catalog", parents=[common], help="check the two-dimensional catalogue")
    p.add_argument("--param", action="append", help="alpha=.. or beta=.. (default alpha=2 beta=3)")
    p.add_argument("--field", help="rational (default) or prime:p")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except NotPerfectError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PERFECT
    except OracleBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (InvariantError, ZeroDivisionError) as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, KeyError, TypeError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
