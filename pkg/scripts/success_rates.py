#!/usr/bin/env python3
"""Measure empirical success rates of the randomized mean algorithms.

For each trial a small clustered instance is generated, the exact optimum is
computed by the oracle, and each randomized algorithm is scored against its
guarantee threshold.  Prints the observed rate next to the promised one.

Usage: python scripts/success_rates.py [--trials 100] [--seed 0]
"""

import argparse

import numpy as np

from dtwmean import Dataset, PointSequence, exact_mean, mean_c, med_appr


def clustered_instance(rng, n=4, max_len=3):
    seqs = []
    for _ in range(n):
        m = int(rng.integers(2, max_len + 1))
        ts = np.sort(rng.uniform(0.0, 1.0, m))
        seqs.append(PointSequence((ts + rng.uniform(-0.15, 0.15, m)).reshape(-1, 1)))
    return Dataset(seqs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    sampled_hits = refined_hits = 0
    for _ in range(args.trials):
        T = clustered_instance(rng)
        opt = exact_mean(T, 2, "line-1-1").cost
        seed = int(rng.integers(0, 2**31))
        if mean_c(T, 0.1, 1.0, 1.0, 2, seed).cost <= 3.0 * opt + 1e-9:
            sampled_hits += 1
        if med_appr(T, 0.5, 1.0, 0.2, 2, seed).cost <= 1.5 * opt + 1e-9:
            refined_hits += 1

    print(f"trials: {args.trials}")
    print(
        f"sampled mean within 3x optimum:     {sampled_hits / args.trials:.3f}"
        "  (promised >= 0.90)"
    )
    print(
        f"refined median within 1.5x optimum: {refined_hits / args.trials:.3f}"
        "  (promised >= 0.80)"
    )


if __name__ == "__main__":
    main()
