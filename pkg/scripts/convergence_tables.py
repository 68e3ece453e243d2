"""Write convergence tables for each series on a doubling schedule.

    python scripts/convergence_tables.py --max-terms 16000 --out tables/

One CSV per series with the same columns as ``sinseries theorem --csv``.
"""

import argparse
import csv
import pathlib

from sinseries import transforms
from sinseries.cli import CSV_COLUMNS, fmt


def doubling(start: int, stop: int) -> list[int]:
    budgets = [start]
    while budgets[-1] * 2 <= stop:
        budgets.append(budgets[-1] * 2)
    return budgets


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-terms", type=int, default=16_000)
    parser.add_argument("--start", type=int, default=125)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("tables"))
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    budgets = doubling(args.start, args.max_terms)
    for series in (1, 2, 3, "sec2"):
        reports = transforms.convergence_table(series, budgets, workers=args.workers, allow_large=True)
        path = args.out / f"series_{series}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS + ("tail_exponent",))
            for r in reports:
                writer.writerow([r.terms_used, fmt(r.partial_sum), fmt(r.raw_error), fmt(r.extrapolated_value),
                                 fmt(r.extrapolated_error), fmt(r.tail_exponent)])
        last = reports[-1]
        print(f"{path}: J={last.terms_used} raw={last.raw_error:.3e} extrapolated={last.extrapolated_error:.3e} "
              f"p={last.tail_exponent:.4f}")


if __name__ == "__main__":
    main()
