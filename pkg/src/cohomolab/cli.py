"""Command line interface.

Commands: validate, cohomology, classify, audit, verify-complex.
Output is JSON (default) or text, byte-identical across runs with equal
inputs.  Exit codes: 0 success, 1 file/validation error, 2 usage error,
3 degree cap exceeded.  COHOMOLAB_MAX_DEGREE overrides the default cap.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import validate_algebra
from .complex import (
    DEFAULT_DEGREE_CAP, DegreeCapExceeded, TAGS, verify_dd_zero,
)
from .cohomology import (
    CONVENTION_SHIFTED, CONVENTIONS, audit_chain_map, cohomology,
    distinguished_quotient,
)
from .fileformat import ParseError, parse_algebra_text
from .multilinear import OrderStructureRequired, UnsupportedAlgebra
from .operators import classify

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _rat(x) -> str:
    return str(Fraction(x))


def _element(e):
    return [_rat(x) for x in e]


def _matrix(m):
    return [[_rat(x) for x in row] for row in m]


def _jsonable(obj):
    """Recursively convert report values to JSON-stable primitives."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return _rat(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _verdict_json(v):
    if v is None:
        return "not_applicable"
    return {
        "verdict": v.verdict,
        "witness": _jsonable(v.witness),
        "certificate": _jsonable(v.certificate),
    }


def _emit(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    lines = []
    for key in sorted(payload):
        lines.append(f"{key}: {json.dumps(payload[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _resolve_cap(args) -> int:
    if args.degree_cap is not None:
        return args.degree_cap
    env = os.environ.get("COHOMOLAB_MAX_DEGREE")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"COHOMOLAB_MAX_DEGREE must be an integer, got {env!r}")
    return DEFAULT_DEGREE_CAP


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohomolab",
        description="Exact cohomology and operator classification for "
                    "finite-dimensional commutative unital algebras.",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=64)
    parser.add_argument("--degree-cap", type=int, default=None,
                        help=f"highest materialized cochain degree (default "
                             f"{DEFAULT_DEGREE_CAP}, or COHOMOLAB_MAX_DEGREE)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the algebra laws")
    p.add_argument("file")

    p = sub.add_parser("cohomology", help="quotient dimensions at a degree")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--complex", choices=TAGS, default="full")
    p.add_argument("--convention", choices=CONVENTIONS, default=CONVENTION_SHIFTED)

    p = sub.add_parser("classify", help="Kadison/Wickstead verdicts")
    p.add_argument("file")

    p = sub.add_parser("audit", help="audit a chain map")
    p.add_argument("file")
    p.add_argument("--map", dest="map_name", required=True,
                   choices=("J", "K", "Jeven", "Jodd"))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--convention", choices=CONVENTIONS, default=CONVENTION_SHIFTED)

    p = sub.add_parser("verify-complex", help="check d_{n+1} o d_n = 0")
    p.add_argument("file")
    p.add_argument("--max-degree", dest="max_n", type=int, default=3)
    p.add_argument("--complex", choices=TAGS, default="full")
    return parser


def _load(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        return parse_algebra_text(fh.read(), trials=args.trials, seed=args.seed)


def _run(args) -> tuple:
    cap = _resolve_cap(args)
    spec = _load(args)
    base = {"algebra": spec.name, "command": args.command, "dim": spec.dim,
            "seed": args.seed}

    if args.command == "validate":
        violations = validate_algebra(spec)
        base["valid"] = not violations
        base["domain_status"] = spec.domain_status
        base["violations"] = [
            {"law": v.law, "indices": list(v.indices), "detail": v.detail}
            for v in violations
        ]
        return base, EXIT_OK if not violations else EXIT_INPUT

    violations = validate_algebra(spec)
    if violations:
        v = violations[0]
        raise ParseError(f"algebra law violated: {v.law} at {v.indices}")

    if args.command == "cohomology":
        report = cohomology(spec, args.degree, tag=args.complex,
                            convention=args.convention, cap=cap)
        base.update({
            "complex": report.tag,
            "convention": report.convention,
            "degree": report.degree,
            "dim_H": report.dim_H,
            "dim_coboundaries": report.dim_coboundaries,
            "dim_cocycles": report.dim_cocycles,
            "representatives": [
                [_rat(x) for e in m.coeffs for x in e]
                for m in report.representatives.members
            ],
        })
        return base, EXIT_OK

    if args.command == "classify":
        report = classify(spec, trials=args.trials, seed=args.seed, cap=cap)
        base.update({
            "domain_status": report.domain_status,
            "h0mc_dim": report.h0mc_dim,
            "h0oo_dim": report.h0oo_dim,
            "kadison": _verdict_json(report.kadison),
            "wickstead": _verdict_json(report.wickstead),
        })
        return base, EXIT_OK

    if args.command == "audit":
        report = audit_chain_map(spec, args.map_name, n=args.n,
                                 convention=args.convention, cap=cap)
        base.update({
            "map": report.map_name,
            "n": report.n,
            "convention": report.convention,
            "target_degree": report.target_degree,
            "cocycle_preservation": {
                "pass": report.cocycle_preservation.ok,
                "witness": _jsonable(report.cocycle_preservation.witness),
            },
            "coboundary_preservation": {
                "pass": report.coboundary_preservation.ok,
                "witness": _jsonable(report.coboundary_preservation.witness),
            },
            "injectivity": {
                "pass": report.injectivity.ok,
                "witness": _jsonable(report.injectivity.witness),
            },
            "evaluator_agreement": report.evaluator_agreement,
        })
        return base, EXIT_OK

    if args.command == "verify-complex":
        report = verify_dd_zero(spec, args.max_n, tag=args.complex, cap=cap)
        base.update({
            "complex": report.tag,
            "max_degree": args.max_n,
            "all_zero": report.all_zero,
            "results": [
                {"n": n, "zero": ok,
                 "first_nonzero": None if entry is None else
                 {"row": entry[0], "col": entry[1], "value": _rat(entry[2])}}
                for n, ok, entry in report.results
            ],
        })
        return base, EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        payload, code = _run(args)
    except DegreeCapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except (ParseError, OSError, OrderStructureRequired, UnsupportedAlgebra,
            ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    sys.stdout.write(_emit(payload, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
