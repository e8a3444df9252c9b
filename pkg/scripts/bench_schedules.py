#!/usr/bin/env python3
"""Fixed vs adaptive separator schedules on square grids, as CSV.

One row per (n, schedule) holding the weak division's total cost
sum(N^(1 + gamma')) next to its boundary sum.
"""

import argparse
import csv
import math
import sys

from rdivision.division import compare_schedules
from rdivision.graph import generate_grid


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1024, 4096, 16384])
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--r-exponent", type=float, default=2 / 3, help="r = ceil(n^x)")
    ap.add_argument("--records", action="store_true", help="emit one row per separation instead")
    args = ap.parse_args(argv)

    out = None
    for n in args.sizes:
        side = math.isqrt(n)
        r = math.ceil(n ** args.r_exponent - 1e-9)
        rep = compare_schedules(generate_grid(side, side), r, args.gamma, r_polynomial=True)
        for mode, row in rep["schedules"].items():
            if args.records:
                rows = [dict(n=n, r=r, schedule=mode, **rec) for rec in row["records"]]
            else:
                rows = [dict(n=n, r=r, schedule=mode, epsilon=row["epsilon"],
                             total_cost=row["work"]["cost"],
                             separations=row["work"]["separations"], B=row["B"],
                             regions=row["regions"], valid=row["valid"])]
            for rec in rows:
                if out is None:
                    out = csv.DictWriter(sys.stdout, fieldnames=list(rec), lineterminator="\n")
                    out.writeheader()
                out.writerow(rec)


if __name__ == "__main__":
    main()
