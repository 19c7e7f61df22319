#!/usr/bin/env python3
"""Time the certificate verifier across growing encodings.

For each ring size the system is one two-term degree-7 polynomial plus
the complete degree-8 layer as single-term polynomials (the shape every
3,4-SAT encoding has); the selection is the known border.  Prints the
input size next to the verify time so growth is easy to eyeball.

    python scripts/verifier_scaling.py --sizes 9 11 13 15
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from bbdetect.detection import verify_certificate
from bbdetect.polynomials import Polynomial, PolySystem
from bbdetect.terms import Ring, terms_of_degree


def layered_system(n_vars: int):
    ring = Ring.generic(n_vars)
    head = tuple([6, 1] + [0] * (n_vars - 2))
    tail = tuple([0, 6, 1] + [0] * (n_vars - 3))
    polys = [Polynomial([(head, 1), (tail, 1)])]
    selection = [head]
    for t in terms_of_degree(n_vars, 8):
        polys.append(Polynomial.single(t))
        selection.append(t)
    return PolySystem(ring, tuple(polys)), tuple(selection)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[9, 11, 13])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    print(f"{'N':>3} {'|F|':>8} {'build_s':>8} {'verify_s':>9}")
    previous = None
    for n_vars in args.sizes:
        t0 = time.monotonic()
        system, selection = layered_system(n_vars)
        build = time.monotonic() - t0
        best = min(
            _timed_verify(system, selection) for _ in range(args.repeats)
        )
        ratio = "" if previous is None else f"  x{best / previous:.2f}"
        print(f"{n_vars:>3} {len(system):>8} {build:>8.3f} {best:>9.4f}{ratio}")
        previous = best
    print(f"(degree-8 layer of N variables has C(N+7,8) terms; "
          f"e.g. N=13 gives {math.comb(20, 8)})")
    return 0


def _timed_verify(system, selection) -> float:
    t0 = time.monotonic()
    result = verify_certificate(system, selection)
    elapsed = time.monotonic() - t0
    if not result.ok:
        raise RuntimeError(f"verifier rejected the layered system: {result.reason}")
    return elapsed


if __name__ == "__main__":
    sys.exit(main())
