#!/usr/bin/env python3
"""Emit large-j limit surfaces and the finite-j convergence series.

Produces surface sample CSVs for both operator families (gamma = 1..4) and
the normalized extreme-eigenvalue series heading toward their limits.
"""

import argparse

from specrange import HalfInt, convergence_sweep, surface_anticomm, surface_jpow
from specrange.io import surface_csv, sweep_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mu-steps", type=int, default=90)
    parser.add_argument("--nu-steps", type=int, default=180)
    parser.add_argument("--j-max", default="50")
    parser.add_argument("--out-prefix", default="limit")
    args = parser.parse_args()

    for gamma in (1, 2, 3, 4):
        for family, build in (("jpow", surface_jpow), ("anticomm", surface_anticomm)):
            surf = build(gamma, args.mu_steps, args.nu_steps)
            path = f"{args.out_prefix}_{family}_g{gamma}.csv"
            with open(path, "w") as fh:
                fh.write(surface_csv(surf))
            print("wrote", path)

    jmax = HalfInt.parse(args.j_max)
    j_list = [HalfInt(t) for t in range(2, jmax.twice + 1)]
    for gamma in (1, 2, 3):
        series = convergence_sweep("ANTICOMM", gamma, j_list, "AM")
        path = f"{args.out_prefix}_am_g{gamma}.csv"
        with open(path, "w") as fh:
            fh.write(sweep_csv(series, "am"))
        print("wrote", path)


if __name__ == "__main__":
    main()
