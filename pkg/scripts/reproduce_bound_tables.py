#!/usr/bin/env python3
"""Print the tight bound tables for the planar squared-spin pair.

For each requested j, sweeps the boundary, optimizes the four combined
measures, and prints the extremum with its attaining angles.
"""

import argparse

from specrange import HalfInt, boundary2d, jsq_pair, optimize_bounds


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--j-list", default="5/2,3,7/2,4")
    parser.add_argument("--phi-steps", type=int, default=360)
    args = parser.parse_args()

    print(f"{'j':>5} {'measure':>8} {'extremum':>12}  angles")
    for tok in args.j_list.split(","):
        j = HalfInt.parse(tok)
        vec = jsq_pair(j)
        boundary = boundary2d(vec, steps=args.phi_steps)
        report = optimize_bounds(vec, boundary, ["h", "u0.5", "u2", "umax"])
        for res in report.results:
            angles = ", ".join(f"{a[-1]:.4f}" for a in res.angles[:4])
            print(f"{str(j):>5} {str(res.kind):>8} {res.value:12.6f}  {angles}")


if __name__ == "__main__":
    main()
