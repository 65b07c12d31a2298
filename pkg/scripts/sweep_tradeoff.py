#!/usr/bin/env python3
"""Consistency/robustness trade-off sweep for one advice region.

Computes C* for the region, sweeps consistency targets from the no-advice
optimum up to C*, and prints (C, r_star) rows plus the band endpoints of
each solution.

Example:
    python scripts/sweep_tradeoff.py --region examples.json --steps 11
    python scripts/sweep_tradeoff.py --demo sum --steps 11
"""

import argparse
import csv
import sys

import numpy as np

from plpareto import Rewards, build_polygon, cstar_enumeration, rho, tradeoff_curve
from plpareto.cli import load_region

DEMOS = {
    "sum": [(4, 16), (9, 16), (16, 9), (16, 4)],
    "diff": [(4, 4), (16, 16), (11, 16), (4, 9)],
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    group = ap.add_mutually_exclusive_group(required=True)
    group.add_argument("--region", help="region JSON file (see CLI docs)")
    group.add_argument("--demo", choices=sorted(DEMOS), help="built-in demo region")
    ap.add_argument("--steps", type=int, default=11)
    ap.add_argument("--m", type=float, default=20.0)
    ap.add_argument("--rl", type=float, default=1.0 / 3.0)
    ap.add_argument("--rh", type=float, default=1.0)
    ap.add_argument("--out", help="optional CSV output path")
    args = ap.parse_args(argv)

    rw = Rewards(args.rl, args.rh, args.m)
    region = (build_polygon(DEMOS[args.demo]) if args.demo
              else load_region(args.region))
    c_star = cstar_enumeration(region, rw).c_star
    r0 = rho(rw)
    print(f"rho={r0:.6f}  C*={c_star:.9f}")

    targets = [float(c) for c in np.linspace(r0, c_star, args.steps)]
    rows = []
    print(f"{'C':>12} {'r_star':>12} {'p(0)':>8} {'p(x_bar)':>9} {'p(end)':>8}")
    for C, sol in tradeoff_curve(region, rw, targets):
        if sol is None:
            print(f"{C:>12.6f} {'infeasible':>12}")
            rows.append((C, "", "", "", ""))
            continue
        end = sol.p_star.breakpoints[-1][0]
        row = (C, sol.r_star, sol.p_star(0.0), sol.p_star(region.x_hi), sol.p_star(end))
        rows.append(row)
        print(f"{C:>12.6f} {sol.r_star:>12.6f} {row[2]:>8.3f} {row[3]:>9.3f} {row[4]:>8.3f}")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["C", "r_star", "p_at_0", "p_at_xbar", "p_at_end"])
            w.writerows(rows)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
