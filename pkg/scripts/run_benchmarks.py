#!/usr/bin/env python3
"""Benchmark table: Avg/Worst compatible ratio per advice kind.

Runs the Monte-Carlo pipeline for a fixed no-advice level and for the
box / ellipse / point / grid advice pipelines on the same seed, and prints
one row per configuration.

Example:
    python scripts/run_benchmarks.py --model uniform-mixture --k 200 --seed 55
"""

import argparse
import csv
import sys
import time

from plpareto import DemandModel, ExperimentConfig, Rewards, run_experiment


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", choices=["uniform-mixture", "normal-mixture"],
                    default="uniform-mixture")
    ap.add_argument("--order", choices=["adversarial", "stochastic"],
                    default="adversarial")
    ap.add_argument("--k", type=int, default=200, help="advice draws per row")
    ap.add_argument("--n-samples", type=int, default=10)
    ap.add_argument("--n-test", type=int, default=100)
    ap.add_argument("--z", type=float, default=0.9, help="advice coverage fraction")
    ap.add_argument("--c-rule", type=float, default=0.9, help="consistency rule x C*")
    ap.add_argument("--seed", type=int, default=55)
    ap.add_argument("--m", type=float, default=20.0)
    ap.add_argument("--rl", type=float, default=1.0 / 3.0)
    ap.add_argument("--rh", type=float, default=1.0)
    ap.add_argument("--out", help="optional CSV output path")
    args = ap.parse_args(argv)

    rw = Rewards(args.rl, args.rh, args.m)
    model = DemandModel(kind=args.model)
    rows = []
    kinds = ["none", "box", "ellipse", "point", "grid"]
    print(f"model={args.model} order={args.order} K={args.k} "
          f"n_samples={args.n_samples} n_test={args.n_test} "
          f"z={args.z} c_rule={args.c_rule} seed={args.seed}")
    print(f"{'advice':<10} {'avg_cp':>8} {'worst_cp':>9} {'seconds':>8}")
    for kind in kinds:
        cfg = ExperimentConfig(
            model=model, advice_kind=kind, z=args.z,
            n_samples=args.n_samples, K=args.k, c_rule=args.c_rule,
            n_test=args.n_test, order=args.order, seed=args.seed,
        )
        t0 = time.perf_counter()
        rep = run_experiment(cfg, rw)
        el = time.perf_counter() - t0
        rows.append((kind, rep.avg_cp, rep.worst_cp, el))
        print(f"{kind:<10} {rep.avg_cp:>8.4f} {rep.worst_cp:>9.4f} {el:>8.1f}")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["advice", "avg_cp", "worst_cp", "seconds"])
            w.writerows(rows)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
