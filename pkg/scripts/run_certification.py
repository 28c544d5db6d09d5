#!/usr/bin/env python3
"""Full certification run: Monte Carlo norm sweep plus both seesaw searches.

Prints a summary and exits nonzero if any stage misses its target. The
qutrit family must cap at 2; the qubit control must reach 2*sqrt(2),
demonstrating the optimizer would find a violation if one existed.
"""

import argparse
import sys
import time

import numpy as np

from spinchsh import SearchConfig, maximize_violation, monte_carlo_certify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=100_000, help="Monte Carlo sample count")
    parser.add_argument("--restarts", type=int, default=200, help="seesaw restarts per family")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--csv", help="optional CSV path for the Monte Carlo norms")
    args = parser.parse_args()

    failures = 0

    start = time.perf_counter()
    worst = monte_carlo_certify(args.samples, seed=args.seed, csv_path=args.csv)
    elapsed = time.perf_counter() - start
    print(f"monte carlo : {args.samples} scenarios, max norm {worst:.15f} ({elapsed:.1f}s)")
    if abs(worst - 2.0) > 1e-9:
        print("monte carlo : FAIL, norm left the band around 2")
        failures += 1

    for family, target in (("qutrit-spin1", 2.0), ("qubit-pauli", float(2.0 * np.sqrt(2.0)))):
        start = time.perf_counter()
        result = maximize_violation(
            SearchConfig(family=family, restarts=args.restarts, seed=args.seed, jobs=args.jobs)
        )
        elapsed = time.perf_counter() - start
        gap = abs(result.best_value - target)
        status = "ok" if gap <= 1e-6 else "FAIL"
        print(
            f"seesaw      : {family:<13} best {result.best_value:.15f} "
            f"target {target:.15f} gap {gap:.2e} [{status}] ({elapsed:.1f}s)"
        )
        if status == "FAIL":
            failures += 1

    print("certification:", "PASS" if failures == 0 else f"FAIL ({failures} stage(s))")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
