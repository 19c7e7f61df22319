"""Batch command line front end.

Subcommands: reduce, detect, verify, border, sat, roundtrip, gen.
Exit codes: 0 = yes/accepted/agreement, 1 = no/rejected, 2 = budget
exceeded, 3 = usage or invalid input, 4 = roundtrip disagreement.
Set BBD_LOG=debug (or any logging level name) for diagnostics.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Sequence

from .detection import (
    DetectStatus,
    SearchBudget,
    certificate_to_json_obj,
    detect,
    make_certificate,
    verify_certificate,
)
from .order_ideals import (
    TermSet,
    check_border_conditions,
    reconstruct_order_ideal,
)
from .polynomials import dump_system, load_system
from .reduction import (
    ReductionRing,
    assignment_to_border,
    border_to_assignment,
    reduce_instance,
    reduction_summary,
)
from .sat import (
    InvalidInstanceError,
    brute_force_sat,
    evaluate,
    parse_dimacs,
    random_34,
    to_dimacs,
    validate_34,
)
from .terms import Ring, check_exponent_vector, format_term

EXIT_YES = 0
EXIT_NO = 1
EXIT_BUDGET = 2
EXIT_ERROR = 3
EXIT_DISAGREE = 4


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which collides with
    # the budget-exceeded code; route errors through CliError instead.
    def error(self, message):
        raise CliError(message)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _budget(args) -> SearchBudget:
    max_candidates = args.max_candidates
    if max_candidates is None:
        max_candidates = args.budget
    return SearchBudget(max_candidates=max_candidates, timeout_secs=args.timeout_secs)


def cmd_reduce(args) -> int:
    inst = parse_dimacs(_read(args.dimacs))
    problems = validate_34(inst)
    if problems:
        for p in problems:
            print(f"invalid 3,4-SAT instance: {p}", file=sys.stderr)
        return EXIT_ERROR
    summary = reduction_summary(inst)
    system = reduce_instance(inst, f1_cap=args.f1_cap)
    rring = ReductionRing.for_instance(inst)
    header = {
        "reduction": {
            "n": summary["n"],
            "m": summary["m"],
            "N": summary["N"],
            "variables": list(rring.ring.var_names),
            "sizes": summary,
        }
    }
    if args.out:
        _write(args.out, dump_system(system, extra=header))
    _emit(
        args,
        {"summary": summary, "out": args.out},
        [
            f"n={summary['n']} m={summary['m']} N={summary['N']}",
            "polynomials: "
            f"variable={summary['variable_polys']} clause={summary['clause_polys']} "
            f"region={summary['region_polys']} degree8={summary['degree8_polys']}",
        ],
    )
    return EXIT_YES


def cmd_detect(args) -> int:
    system = load_system(_read(args.system))
    result = detect(system, _budget(args))
    payload = {
        "status": result.status.value,
        "candidates_checked": result.candidates_checked,
        "elapsed_secs": round(result.elapsed_secs, 6),
    }
    lines = [f"{result.status.value} after {result.candidates_checked} candidates"]
    if result.status is DetectStatus.YES:
        cert = result.certificate
        payload["order_ideal_size"] = len(cert.order_ideal)
        lines.append(f"order ideal has {len(cert.order_ideal)} terms")
        if args.out:
            _write(args.out, json.dumps(certificate_to_json_obj(cert), sort_keys=True))
    _emit(args, payload, lines)
    if result.status is DetectStatus.YES:
        return EXIT_YES
    if result.status is DetectStatus.NO:
        return EXIT_NO
    return EXIT_BUDGET


def cmd_verify(args) -> int:
    system = load_system(_read(args.system))
    cert_obj = json.loads(_read(args.certificate))
    selection = tuple(
        check_exponent_vector(v, system.ring.n_vars) for v in cert_obj["selection"]
    )
    result = verify_certificate(system, selection)
    mismatch = None
    if result.ok:
        cert = make_certificate(system, selection, _verified=True)
        if "border" in cert_obj:
            given = {tuple(t) for t in cert_obj["border"]}
            if given != set(cert.border):
                mismatch = "border set does not match the selection"
        if mismatch is None and "order_ideal" in cert_obj:
            given = {tuple(t) for t in cert_obj["order_ideal"]}
            if given != set(cert.order_ideal):
                mismatch = "order ideal does not match the reconstruction"
    ok = result.ok and mismatch is None
    reason = mismatch if result.ok else f"{result.reason}: {result.detail}"
    _emit(
        args,
        {"accepted": ok, "reason": None if ok else reason},
        ["accepted" if ok else f"rejected ({reason})"],
    )
    return EXIT_YES if ok else EXIT_NO


def cmd_border(args) -> int:
    obj = json.loads(_read(args.terms))
    if isinstance(obj, dict):
        names = obj.get("vars")
        vectors = obj["terms"]
    else:
        names, vectors = None, obj
    if not vectors:
        print("empty term set", file=sys.stderr)
        return EXIT_ERROR
    n_vars = len(vectors[0])
    ring = Ring(tuple(names)) if names else Ring.generic(n_vars)
    ts = TermSet([check_exponent_vector(v, ring.n_vars) for v in vectors])
    report = check_border_conditions(ts)
    if report.is_border:
        ideal = reconstruct_order_ideal(ts, _assume_checked=True)
        shown = (
            "{" + ", ".join(format_term(t, ring) for t in ideal.sorted_terms()) + "}"
            if len(ideal) <= 40
            else f"({len(ideal)} terms)"
        )
        _emit(
            args,
            {
                "is_border": True,
                "order_ideal": [list(t) for t in ideal.sorted_terms()],
            },
            [f"is border of order ideal {shown}"],
        )
        return EXIT_YES
    lines = ["not a border of any order ideal"]
    for v in report.violations[:10]:
        lines.append(
            f"condition {v.condition} fails at {format_term(v.term, ring)}"
        )
    _emit(
        args,
        {
            "is_border": False,
            "violations": [_violation_obj(v) for v in report.violations],
        },
        lines,
    )
    return EXIT_NO


def _violation_obj(v) -> dict:
    obj = {"condition": v.condition, "term": list(v.term)}
    if v.condition == 1:
        obj["dividing_var"], obj["other_var"] = v.detail
    elif v.condition == 3:
        obj["divisor"], obj["missing_parent"] = (list(t) for t in v.detail)
    return obj


def cmd_sat(args) -> int:
    inst = parse_dimacs(_read(args.dimacs))
    assignment = brute_force_sat(inst)
    if assignment is None:
        _emit(args, {"satisfiable": False}, ["UNSAT"])
        return EXIT_NO
    readable = " ".join(
        f"x{i + 1}={'T' if v else 'F'}" for i, v in enumerate(assignment)
    )
    _emit(
        args,
        {"satisfiable": True, "assignment": list(assignment)},
        [f"SATISFIABLE {readable}"],
    )
    return EXIT_YES


def cmd_roundtrip(args) -> int:
    inst = parse_dimacs(_read(args.dimacs))
    problems = validate_34(inst)
    if problems:
        for p in problems:
            print(f"invalid 3,4-SAT instance: {p}", file=sys.stderr)
        return EXIT_ERROR
    assignment = brute_force_sat(inst)
    system = reduce_instance(inst, f1_cap=args.f1_cap)
    result = detect(system, _budget(args))
    if result.status is DetectStatus.BUDGET_EXCEEDED:
        _emit(args, {"status": "budget-exceeded"}, ["budget exceeded during detection"])
        return EXIT_BUDGET
    detected = result.status is DetectStatus.YES
    satisfiable = assignment is not None
    checks = {"agreement": detected == satisfiable}
    if satisfiable:
        constructed = assignment_to_border(inst, assignment)
        checks["constructed_certificate_accepted"] = bool(
            verify_certificate(system, constructed)
        )
        read_back = border_to_assignment(inst, result.certificate)
        checks["read_back_satisfies"] = evaluate(inst, read_back)
    ok = all(checks.values())
    _emit(
        args,
        {"satisfiable": satisfiable, "detected": detected, "checks": checks},
        [
            f"satisfiable={satisfiable} detected={detected}",
            "agreement" if ok else f"DISAGREEMENT: {checks}",
        ],
    )
    return EXIT_YES if ok else EXIT_DISAGREE


def cmd_gen(args) -> int:
    inst = random_34(args.n, args.m, seed=args.seed)
    _write(args.out, to_dimacs(inst))
    return EXIT_YES


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Registered on the main parser with real defaults and on every
    # subparser with SUPPRESS, so the flags work on either side of the
    # subcommand without the subparser clobbering earlier values.
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument(
        "--format", choices=("text", "json"),
        default=argparse.SUPPRESS if suppress else "text",
    )
    parser.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS if suppress else 0
    )
    parser.add_argument("--max-candidates", type=int, default=d)
    parser.add_argument("--budget", type=int, default=d, help="alias for --max-candidates")
    parser.add_argument("--timeout-secs", type=float, default=d)
    parser.add_argument(
        "--f1-cap", type=int,
        default=argparse.SUPPRESS if suppress else 1_000_000,
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="bbdetect", description=__doc__)
    _add_common(parser, suppress=False)
    common = _Parser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", parents=[common], help="encode a 3,4-SAT DIMACS file as a polynomial system")
    p.add_argument("dimacs")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("detect", parents=[common], help="decide whether a system is a border basis")
    p.add_argument("system")
    p.add_argument("--out", default=None, help="write the certificate JSON here")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate with no search")
    p.add_argument("system")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("border", parents=[common], help="check the three border conditions on a term set")
    p.add_argument("terms")
    p.set_defaults(func=cmd_border)

    p = sub.add_parser("sat", parents=[common], help="brute-force satisfiability of a DIMACS file")
    p.add_argument("dimacs")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("roundtrip", parents=[common], help="cross-check brute-force SAT against detection")
    p.add_argument("dimacs")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("gen", parents=[common], help="generate a random valid 3,4-SAT instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("BBD_LOG")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (InvalidInstanceError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
