#!/usr/bin/env python3
"""Cross-check brute-force satisfiability against border-basis detection.

Builds a corpus of valid 3,4-SAT instances (the canonical two-clause one
plus seeded random draws), encodes each as a polynomial system, and checks
that detection agrees with the brute-force oracle.  For satisfiable
instances it also verifies the assignment-built certificate and reads an
assignment back off the detected one.

    python scripts/roundtrip_corpus.py --count 20
"""

from __future__ import annotations

import argparse
import sys
import time

from bbdetect.detection import DetectStatus, detect, verify_certificate
from bbdetect.reduction import (
    assignment_to_border,
    border_to_assignment,
    reduce_instance,
    reduction_summary,
)
from bbdetect.sat import CnfInstance, brute_force_sat, evaluate, random_34, validate_34

TWO_CLAUSE = CnfInstance(3, ((1, 2, 3), (-1, -2, -3)))


def build_corpus(count: int, base_seed: int):
    out = [TWO_CLAUSE]
    seed = base_seed
    while len(out) < count:
        m = 2 if len(out) % 2 else 3
        inst = random_34(3, m, seed=seed)
        seed += 1
        if inst not in out:
            out.append(inst)
    return out


def run_one(inst):
    summary = reduction_summary(inst)
    started = time.monotonic()
    assignment = brute_force_sat(inst)
    system = reduce_instance(inst)
    result = detect(system)
    detected = result.status is DetectStatus.YES
    agree = detected == (assignment is not None)
    constructed_ok = read_back_ok = None
    if assignment is not None and detected:
        constructed_ok = bool(
            verify_certificate(system, assignment_to_border(inst, assignment))
        )
        read_back = border_to_assignment(inst, result.certificate)
        read_back_ok = evaluate(inst, read_back)
    elapsed = time.monotonic() - started
    return {
        "n": summary["n"],
        "m": summary["m"],
        "N": summary["N"],
        "sat": assignment is not None,
        "detected": detected,
        "agree": agree,
        "constructed_ok": constructed_ok,
        "read_back_ok": read_back_ok,
        "candidates": result.candidates_checked,
        "secs": elapsed,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    corpus = build_corpus(args.count, args.seed)
    print(f"{'idx':>3} {'n':>2} {'m':>2} {'N':>3} {'sat':>5} {'det':>5} "
          f"{'agree':>5} {'cand':>5} {'secs':>7}")
    all_ok = True
    for idx, inst in enumerate(corpus):
        assert not validate_34(inst)
        row = run_one(inst)
        ok = row["agree"] and row["constructed_ok"] is not False and row["read_back_ok"] is not False
        all_ok &= ok
        print(
            f"{idx:>3} {row['n']:>2} {row['m']:>2} {row['N']:>3} "
            f"{str(row['sat']):>5} {str(row['detected']):>5} "
            f"{str(row['agree']):>5} {row['candidates']:>5} {row['secs']:>7.2f}"
        )
    print("all checks passed" if all_ok else "DISAGREEMENT FOUND")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
