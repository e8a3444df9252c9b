#!/usr/bin/env python3
"""Measure the division validator ratios over the grid suite.

Prints, per cell, the region-count ratio |regions|/(n/r), the boundary-sum
ratio B/(p n/r) and the largest per-region boundary over p. The frozen
validator constants (c_cnt, c_B, c_bnd) were chosen with headroom above the
maxima this reports.
"""

import argparse
import csv
import math
import sys
import time

from rdivision.division import Constants, ScheduleConfig, compute_division, validate_division
from rdivision.graph import generate_grid


def cells(sizes, targets):
    for n in sizes:
        for r in (math.ceil(n ** 0.5), math.ceil(n ** (2 / 3) - 1e-9)):
            for gt in targets:
                yield n, r, gt


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096, 16384])
    ap.add_argument("--gammas", type=float, nargs="+", default=[0.0, 0.25, 0.5])
    ap.add_argument("--separator", default="bfs-layer", choices=["bfs-layer", "brute"])
    args = ap.parse_args(argv)

    # loose constants so every ratio is measured rather than rejected
    loose = Constants(c_bnd=math.inf, c_cnt=math.inf, c_B=math.inf)
    out = csv.writer(sys.stdout)
    out.writerow(["n", "r", "gamma_target", "p", "regions", "count_ratio", "B", "B_ratio",
                  "boundary_ratio", "seconds"])
    peaks = dict(count_ratio=0.0, B_ratio=0.0, boundary_ratio=0.0)
    for n, r, gt in cells(args.sizes, args.gammas):
        side = math.isqrt(n)
        g = generate_grid(side, side)
        t0 = time.perf_counter()
        d = compute_division(g, r, ScheduleConfig(gamma_target=gt), sep=args.separator)
        m = validate_division(g, d, constants=loose).metrics
        for k in peaks:
            peaks[k] = max(peaks[k], m[k])
        out.writerow([n, r, gt, f"{d.p:.4f}", m["regions"], f"{m['count_ratio']:.4f}", m["B"],
                      f"{m['B_ratio']:.4f}", f"{m['boundary_ratio']:.4f}",
                      f"{time.perf_counter() - t0:.2f}"])
    frozen = Constants()
    print(f"# max count_ratio {peaks['count_ratio']:.3f} (frozen c_cnt {frozen.c_cnt})", file=sys.stderr)
    print(f"# max B_ratio {peaks['B_ratio']:.3f} (frozen c_B {frozen.c_B})", file=sys.stderr)
    print(f"# max boundary_ratio {peaks['boundary_ratio']:.3f} (frozen c_bnd {frozen.c_bnd})",
          file=sys.stderr)


if __name__ == "__main__":
    main()
