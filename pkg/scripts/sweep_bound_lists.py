#!/usr/bin/env python3
"""Full j-sweeps of the tight bounds (the minutes-scale experiment).

Writes one CSV per family with columns j_twice, measure, value. Covers the
planar squared pair, the anticommutator triple, and the scaled cube-power
triple from j = 3/2 (or 1) up to --j-max.
"""

import argparse
import csv
import sys
import time

from specrange import (
    HalfInt,
    anticomm_vec,
    boundary2d,
    boundary3d,
    convergence_sweep,
    jsq_pair,
    optimize_bounds,
    power_vec,
    scale_uniform,
)


def write_rows(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["j_twice", "measure", "value"])
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--j-max", default="50")
    parser.add_argument("--out-prefix", default="bound_lists")
    parser.add_argument("--theta-steps", type=int, default=36)
    parser.add_argument("--phi-steps", type=int, default=72)
    parser.add_argument("--families", default="jsq2d,anticomm,jpow3")
    args = parser.parse_args()
    jmax = HalfInt.parse(args.j_max)
    families = args.families.split(",")

    if "jsq2d" in families:
        rows = []
        start = time.time()
        for twice in range(3, jmax.twice + 1):
            vec = jsq_pair(HalfInt(twice))
            rep = optimize_bounds(vec, boundary2d(vec, steps=360), ["h", "u0.5", "u2", "umax"])
            rows.extend((twice, str(r.kind), f"{r.value:.12g}") for r in rep.results)
            print(f"jsq2d j={HalfInt(twice)} done ({time.time()-start:.0f}s)", file=sys.stderr)
        write_rows(f"{args.out_prefix}_jsq2d.csv", rows)

    if "anticomm" in families:
        rows = []
        start = time.time()
        for twice in range(3, jmax.twice + 1):
            vec = anticomm_vec(HalfInt(twice), 1)
            mesh = boundary3d(vec, args.theta_steps, args.phi_steps)
            rep = optimize_bounds(vec, mesh, ["h", "u2", "umax"])
            rows.extend((twice, str(r.kind), f"{r.value:.12g}") for r in rep.results)
            mean = convergence_sweep("ANTICOMM", 1, [HalfInt(twice)], "MEAN_ETA1")[0][1]
            rows.append((twice, "mean_eta1", f"{mean:.12g}"))
            print(f"anticomm j={HalfInt(twice)} done ({time.time()-start:.0f}s)", file=sys.stderr)
        write_rows(f"{args.out_prefix}_anticomm.csv", rows)

    if "jpow3" in families:
        rows = []
        start = time.time()
        for twice in range(2, jmax.twice + 1):
            j = HalfInt(twice)
            vec = scale_uniform(power_vec(j, 3), 1.0 / j.j**3)
            mesh = boundary3d(vec, args.theta_steps, args.phi_steps)
            rep = optimize_bounds(vec, mesh, ["umax"])
            rows.append((twice, "umax", f"{rep.results[0].value:.12g}"))
            print(f"jpow3 j={j} done ({time.time()-start:.0f}s)", file=sys.stderr)
        write_rows(f"{args.out_prefix}_jpow3.csv", rows)


if __name__ == "__main__":
    main()
