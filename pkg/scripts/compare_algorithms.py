#!/usr/bin/env python3
"""Run every mean algorithm on one synthetic instance and print a table.

Usage: python scripts/compare_algorithms.py [--n 6] [--noise 0.15] [--seed 0]
"""

import argparse

from dtwmean import PointSequence, generate_synthetic
from dtwmean.bench import RunConfig, bench, default_battery


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--noise", type=float, default=0.15)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--p", type=float, default=1.0)
    ap.add_argument("--ell", type=int, default=2)
    ap.add_argument("--eps", type=float, default=1.0)
    args = ap.parse_args()

    base = PointSequence([[0.0], [1.0]])
    T = generate_synthetic(base, args.n, args.noise, (2, 3), seed=args.seed)
    cfg = RunConfig(
        algo="sample", p=args.p, ell=args.ell, eps=args.eps,
        delta=0.2, seed=args.seed,
    )
    report = bench(default_battery(cfg), T)

    print(f"{'algo':<8} {'cost':>12} {'ratio':>8} {'ms':>9}  flags")
    for row in report["runs"]:
        if "error" in row:
            print(f"{row['algo']:<8} error: {row['error']}")
            continue
        ratio = "-" if row["ratio"] is None else f"{row['ratio']:.4f}"
        print(
            f"{row['algo']:<8} {row['result']['cost']:>12.6f} {ratio:>8} "
            f"{row['runtime_ms']:>9.1f}  {','.join(row['flags'])}"
        )


if __name__ == "__main__":
    main()
