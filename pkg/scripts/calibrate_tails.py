"""One-time calibration run for the tail-extrapolation tolerances.

Sums each series to J = 1e5, then reports how far the J = 1e4 extrapolated
value sits from the known limit and from the J = 1e5 extrapolation. The
acceptance tolerances are frozen from this output with a safety margin.

    python scripts/calibrate_tails.py [--reference 100000] [--budget 10000]
"""

import argparse
import json
import time

from sinseries import transforms


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--reference", type=int, default=100_000)
    parser.add_argument("--budget", type=int, default=10_000)
    args = parser.parse_args()

    rows = []
    for tid in (1, 2, 3, "sec2"):
        t0 = time.perf_counter()
        reports = transforms.convergence_table(tid, [args.budget, args.reference], allow_large=True)
        at_budget, ref = reports
        rows.append({
            "series": str(tid),
            "known_limit": ref.known_limit,
            "J_budget": args.budget,
            "ext_err_budget": at_budget.extrapolated_error,
            "raw_err_budget": at_budget.raw_error,
            "p_budget": at_budget.tail_exponent,
            "J_reference": args.reference,
            "ext_err_reference": ref.extrapolated_error,
            "raw_err_reference": ref.raw_error,
            "p_reference": ref.tail_exponent,
            "budget_vs_reference": abs(at_budget.extrapolated_value - ref.extrapolated_value),
            "seconds": round(time.perf_counter() - t0, 1),
        })
        print(json.dumps(rows[-1]), flush=True)


if __name__ == "__main__":
    main()
