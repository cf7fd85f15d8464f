"""Constant-factor approximation of the restricted p-mean.

Two variants around the same core idea: points close to the vertices of an
optimal mean are plentiful in the vertex pool, so a modest uniform sample (or
a deterministic net of the pool's ball range space) contains, with the stated
probability, one vertex per section of some (2^p + eps)-approximate mean.
Enumerating all short sequences over the sample and keeping the cheapest one
realizes that approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ._batch import argmin_first, score_candidates
from .core import Dataset, PointSequence
from .errors import CapacityError, require
from .ranges import epsilon_net

#: Cap on the number of enumerated candidate sequences.
CANDIDATE_GUARD = 100_000


@dataclass
class CandidateSet:
    """Finite set of candidate mean sequences with how they were produced."""

    candidates: list[PointSequence]
    provenance: str  # sampled | net | grid | simplified

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass
class MeanResult:
    """Outcome of a mean search: the winner, its cost and bookkeeping."""

    sequence: PointSequence
    cost: float
    candidate_set: CandidateSet | None = None
    candidates_scored: int = 0
    flags: list[str] = field(default_factory=list)


def eps_prime(eps: float, p: float) -> float:
    return eps / (2.0 ** (p - 1.0) + eps)


def mean_c_sample_size(m: int, ell: int, delta: float, eps: float, p: float) -> int:
    """Number of pool vertices the randomized mean algorithm draws."""
    return math.ceil(m * (math.log(ell) + math.log(1.0 / delta)) / eps_prime(eps, p))


def dedup_rows(rows: np.ndarray) -> np.ndarray:
    """Distinct rows in first-occurrence order."""
    seen: dict[tuple, None] = {}
    for r in rows:
        seen.setdefault(tuple(r), None)
    return np.array(list(seen), dtype=float)


def enumerate_tuples(points: np.ndarray, ell: int) -> list[np.ndarray]:
    """All sequences of length 1..ell over `points`, one (K, L, d) array per L.

    Enumeration is by length, then lexicographic in point indices, which fixes
    the tie order of the downstream argmin.
    """
    u, d = points.shape
    out = []
    for L in range(1, ell + 1):
        idx = np.array(list(product(range(u), repeat=L)), dtype=int)
        out.append(points[idx.reshape(-1)].reshape(len(idx), L, d))
    return out


def tuple_count(u: int, ell: int) -> int:
    return sum(u**L for L in range(1, ell + 1))


def _argmin_over_groups(
    T: Dataset, groups: list[np.ndarray], p: float, q: float
) -> tuple[PointSequence, float, int]:
    best_cost = math.inf
    best_seq: PointSequence | None = None
    scored = 0
    for block in groups:
        if block.shape[0] == 0:
            continue
        scores = score_candidates(T, block, p, q)
        scored += block.shape[0]
        i = argmin_first(scores)
        if scores[i] < best_cost:
            best_cost = float(scores[i])
            best_seq = PointSequence(block[i])
    assert best_seq is not None
    return best_seq, best_cost, scored


def mean_c(
    T: Dataset, delta: float, eps: float, p: float, ell: int, seed: int
) -> MeanResult:
    """Randomized (2^p + eps)-approximate restricted p-mean.

    Draws vertices uniformly with replacement from the vertex pool, forms all
    sequences of length at most ell over the sample and returns the cheapest
    one under cost_p^p.  Succeeds with probability at least 1 - delta.
    """
    require(0 < delta < 1, "delta must lie in (0, 1)")
    require(eps > 0, "eps must be positive")
    require(p >= 1, "p must be >= 1")
    require(ell >= 1, "ell must be >= 1")
    pool = T.vertex_pool()
    size = mean_c_sample_size(T.m, ell, delta, eps, p)
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, len(pool), size=size)
    sample = dedup_rows(pool[draws])

    total = tuple_count(len(sample), ell)
    if total > CANDIDATE_GUARD:
        raise CapacityError(
            f"{total} candidates exceed the guard of {CANDIDATE_GUARD}; "
            "increase eps or delta, or lower ell"
        )
    groups = enumerate_tuples(sample, ell)
    seq, best, scored = _argmin_over_groups(T, groups, p, p)
    cands = CandidateSet(
        candidates=[PointSequence(row) for block in groups for row in block],
        provenance="sampled",
    )
    return MeanResult(sequence=seq, cost=best, candidate_set=cands, candidates_scored=scored)


def mean_c_d(T: Dataset, eps: float, p: float, ell: int) -> MeanResult:
    """Deterministic (2^p + eps)-approximate restricted p-mean.

    Replaces the sampling step with a deterministic net of the vertex pool's
    ball range space; the guarantee then holds unconditionally.  Desk-scale
    only: the subsystem enumeration guards cap the pool size.
    """
    require(eps > 0, "eps must be positive")
    require(p >= 1, "p must be >= 1")
    require(ell >= 1, "ell must be >= 1")
    pool = T.vertex_pool()
    net = epsilon_net(pool, eps_prime(eps, p) / T.m)

    total = tuple_count(len(net), ell)
    if total > CANDIDATE_GUARD:
        raise CapacityError(
            f"{total} candidates exceed the guard of {CANDIDATE_GUARD}"
        )
    groups = enumerate_tuples(net, ell)
    seq, best, scored = _argmin_over_groups(T, groups, p, p)
    cands = CandidateSet(
        candidates=[PointSequence(row) for block in groups for row in block],
        provenance="net",
    )
    return MeanResult(sequence=seq, cost=best, candidate_set=cands, candidates_scored=scored)
