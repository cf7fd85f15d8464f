"""Vectorized scoring of many candidate sequences against one dataset.

The candidate-search algorithms all end with an argmin of cost over a large
enumerated candidate set.  This module runs the tiny DTW dynamic program
simultaneously across the whole candidate axis with numpy, chunked to keep
intermediates small.  Results agree with the scalar path up to float
round-off from differing summation order.
"""

from __future__ import annotations

import numpy as np

from .core import Dataset

# cap on elements of the (K, L, m) distance block per chunk
_BLOCK_ELEMENTS = 4_000_000


def dtw_pow_block(tau: np.ndarray, cands: np.ndarray, p: float) -> np.ndarray:
    """min over warpings of the summed p-th-power distances, per candidate.

    tau: (m, d) vertices; cands: (K, L, d) candidate vertices.  Returns (K,).
    """
    diff = cands[:, :, None, :] - tau[None, None, :, :]
    powd = np.sqrt((diff * diff).sum(axis=-1)) ** p  # (K, L, m)
    K, L, m = powd.shape
    acc = np.empty_like(powd)
    acc[:, 0, 0] = powd[:, 0, 0]
    for k in range(1, m):
        acc[:, 0, k] = acc[:, 0, k - 1] + powd[:, 0, k]
    for j in range(1, L):
        acc[:, j, 0] = acc[:, j - 1, 0] + powd[:, j, 0]
        for k in range(1, m):
            best = np.minimum(acc[:, j - 1, k - 1], acc[:, j - 1, k])
            np.minimum(best, acc[:, j, k - 1], out=best)
            acc[:, j, k] = powd[:, j, k] + best
    return acc[:, -1, -1]


def score_block(T: Dataset, cands: np.ndarray, p: float, q: float) -> np.ndarray:
    """cost_p^q of every candidate in a (K, L, d) block."""
    total = np.zeros(cands.shape[0])
    for tau in T.sequences:
        pow_acc = dtw_pow_block(tau.vertices, cands, p)
        total += (pow_acc ** (1.0 / p)) ** q
    return total


def score_candidates(T: Dataset, cands: np.ndarray, p: float, q: float) -> np.ndarray:
    """Chunked cost_p^q scores for a (K, L, d) candidate array."""
    K, L, _ = cands.shape
    if K == 0:
        return np.empty(0)
    chunk = max(1, _BLOCK_ELEMENTS // max(1, L * T.m))
    if K <= chunk:
        return score_block(T, cands, p, q)
    parts = [
        score_block(T, cands[s : s + chunk], p, q) for s in range(0, K, chunk)
    ]
    return np.concatenate(parts)


def argmin_first(scores: np.ndarray) -> int:
    """Index of the strictly smallest score; ties resolve to the first index."""
    return int(np.argmin(scores))
