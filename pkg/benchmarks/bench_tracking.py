"""Compare path-tracking throughput: compiled kernels vs pure numpy.

The hot kernels are numba-compiled by default; setting ACSV_PURE_NUMPY=1
selects the interpreter fallback.  This benchmark times both backends on the
same workload in subprocesses (the backend choice is fixed at import time).

Usage: python3 benchmarks/bench_tracking.py [--paths-cap N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, os, sys, time
from ratdiag.poly import Direction, infer_roster, parse_poly
from ratdiag.minimal import comb_extended_base
from ratdiag.solver import SolveOptions, solve_system

cases = json.loads(sys.argv[1])
out = {}
for text in cases:
    roster = infer_roster(text)
    H = parse_poly(text, roster)
    sysq = comb_extended_base(H, Direction((1,) * len(roster)))
    solve_system(sysq, SolveOptions(max_steps=4))  # warm the kernels
    t0 = time.perf_counter()
    report = solve_system(sysq, SolveOptions())
    out[text] = {
        "seconds": time.perf_counter() - t0,
        "paths": report.paths_tracked,
        "solutions": len(report.solutions),
    }
print(json.dumps(out))
"""

CASES = [
    "1-x-y",
    "1-x*y-x*y^2-2*x^2*y",
    "1-(x+y-x*y)*(1+z)",
]


def run_backend(pure: bool, cases: list[str]) -> dict:
    env = dict(os.environ)
    env["ACSV_PURE_NUMPY"] = "1" if pure else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(cases)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", nargs="*", default=CASES)
    args = parser.parse_args()

    compiled = run_backend(pure=False, cases=args.cases)
    pure = run_backend(pure=True, cases=args.cases)

    width = max(len(c) for c in args.cases)
    print(f"{'case':<{width}}  {'paths':>6}  {'compiled':>9}  {'numpy':>9}  {'speedup':>7}")
    for case in args.cases:
        c, p = compiled[case], pure[case]
        speed = p["seconds"] / c["seconds"] if c["seconds"] else float("inf")
        print(
            f"{case:<{width}}  {c['paths']:>6}  {c['seconds']:>8.3f}s"
            f"  {p['seconds']:>8.3f}s  {speed:>6.1f}x"
        )


if __name__ == "__main__":
    main()
