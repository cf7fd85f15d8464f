"""(k, ell, p, q)-clustering via candidate generation plus recursive search.

Two candidate generators are available.  `cand1` samples pool vertices and
enumerates all short sequences over the sample; with the stated probability
it contains a (2^p + eps)-approximate restricted p-mean of every sufficiently
large subset of the input.  `cand2` samples whole input sequences and
simplifies them, giving an O((m * ell)^(1/p))-approximate median candidate
for every such subset.

`k_clustering` plugs a generator into a branch-and-prune driver: at each node
it either commits one generated candidate as the next center, or discards the
points best served by the current centers and recurses on the rest, so some
root-to-leaf path isolates each optimal cluster well enough for the
generator's per-subset guarantee to apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import Dataset, PointSequence, dtw
from .errors import CapacityError, require
from .meanapprox import CANDIDATE_GUARD, CandidateSet, dedup_rows
from .simplify import simplify

NODE_GUARD = 1_000_000


@dataclass(frozen=True)
class ClusteringParams:
    """Parameters of one clustering run; beta must exceed 2k."""

    k: int
    beta: float
    delta: float
    p: float = 1.0
    q: float = 1.0
    ell: int = 2
    eps: float = 1.0  # consumed by the cand1 generator only

    def __post_init__(self) -> None:
        require(self.k >= 1, "k must be >= 1")
        require(self.beta > 2 * self.k, "beta must exceed 2k")
        require(0 < self.delta < 1, "delta must lie in (0, 1)")
        require(self.p >= 1 and self.q >= 1, "p and q must be >= 1")
        require(self.ell >= 1, "ell must be >= 1")
        require(self.eps > 0, "eps must be positive")


@dataclass
class CenterSet:
    centers: list[PointSequence]
    cost: float


def clustering_cost(T: Dataset, centers, p: float, q: float) -> float:
    """Sum over the dataset of the q-th power of the distance to the nearest center."""
    cs = [c if isinstance(c, PointSequence) else PointSequence(c) for c in centers]
    require(len(cs) >= 1, "need at least one center")
    total = 0.0
    for tau in T.sequences:
        total += min(dtw(c, tau, p).distance for c in cs) ** q
    return total


def cand1_sample_size(
    beta: float, delta: float, eps: float, p: float, m: int, ell: int
) -> int:
    return math.ceil((2.0**p / eps + 1.0) * beta * m * math.log(ell / delta))


def cand2_sample_size(beta: float, delta: float) -> int:
    return math.ceil(2.0 * beta * math.log2(2.0 / delta))


def _cand1(
    T: Dataset, beta: float, delta: float, eps: float, p: float, ell: int, rng
) -> CandidateSet:
    pool = T.vertex_pool()
    size = cand1_sample_size(beta, delta, eps, p, T.m, ell)
    draws = rng.integers(0, len(pool), size=size)
    sample = dedup_rows(pool[draws])
    u, d = sample.shape
    total = sum(u**L for L in range(1, ell + 1))
    if total > CANDIDATE_GUARD:
        raise CapacityError(
            f"{total} candidates exceed the guard of {CANDIDATE_GUARD}"
        )
    cands = [
        PointSequence(sample[list(combo)])
        for L in range(1, ell + 1)
        for combo in product(range(u), repeat=L)
    ]
    return CandidateSet(candidates=cands, provenance="sampled")


def _cand2(
    T: Dataset, beta: float, p: float, delta: float, ell: int, rng
) -> CandidateSet:
    size = cand2_sample_size(beta, delta)
    draws = rng.integers(0, T.n, size=size)
    out: list[PointSequence] = []
    seen: set[tuple] = set()
    for i in draws:
        s = simplify(T.sequences[int(i)], ell, p).sequence
        if s.key() not in seen:
            seen.add(s.key())
            out.append(s)
    return CandidateSet(candidates=out, provenance="simplified")


def cand1(
    T: Dataset, beta: float, delta: float, eps: float, p: float, ell: int, seed: int
) -> CandidateSet:
    """Vertex-sampling candidate set for (1, ell, p, p)-clustering subsets."""
    require(beta > 1, "beta must exceed 1")
    require(0 < delta < 1, "delta must lie in (0, 1)")
    require(eps > 0, "eps must be positive")
    return _cand1(T, beta, delta, eps, p, ell, np.random.default_rng(seed))


def cand2(
    T: Dataset, beta: float, p: float, delta: float, ell: int, seed: int
) -> CandidateSet:
    """Simplified-sample candidate set for (1, ell, p, 1)-clustering subsets."""
    require(beta > 1, "beta must exceed 1")
    require(0 < delta < 1, "delta must lie in (0, 1)")
    return _cand2(T, beta, p, delta, ell, np.random.default_rng(seed))


def k_clustering(
    T: Dataset, params: ClusteringParams, generator: str = "cand1", seed: int = 0
) -> CenterSet:
    """Best center set found by the recursive branch-and-prune search.

    At every node with fewer than k centers the search branches on each
    generated candidate as the next center, and additionally (once at least
    one center exists) on discarding the ceil(|active| * (1 - 2k/beta))
    active points closest to the current centers.  Costs are always accounted
    over the full dataset; the returned cost is the minimum over all complete
    center sets explored.
    """
    require(generator in ("cand1", "cand2"), f"unknown generator {generator!r}")
    k, beta, p, q, ell = params.k, params.beta, params.p, params.q, params.ell
    rng = np.random.default_rng(seed)
    delta_node = params.delta / (k + 1)
    n = T.n

    pow_rows: dict[tuple, np.ndarray] = {}

    def row_of(c: PointSequence) -> np.ndarray:
        key = c.key()
        if key not in pow_rows:
            pow_rows[key] = np.array(
                [dtw(c, tau, p).distance ** q for tau in T.sequences]
            )
        return pow_rows[key]

    def generate(active: tuple[int, ...]) -> list[PointSequence]:
        sub = Dataset([T.sequences[i] for i in active])
        if generator == "cand1":
            return _cand1(sub, beta, delta_node, params.eps, p, ell, rng).candidates
        return _cand2(sub, beta, p, delta_node, ell, rng).candidates

    best_cost = math.inf
    best_centers: list[PointSequence] | None = None
    nodes = 0

    def record(centers: list[PointSequence], dmin: np.ndarray | None) -> None:
        nonlocal best_cost, best_centers
        if dmin is None:
            return
        total = float(dmin.sum())
        if total < best_cost:
            best_cost = total
            best_centers = list(centers)

    def recurse(
        centers: list[PointSequence],
        dmin: np.ndarray | None,
        active: tuple[int, ...],
    ) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > NODE_GUARD:
            raise CapacityError(f"search exceeded {NODE_GUARD} nodes")
        if len(centers) == k or not active:
            record(centers, dmin)
            return
        for c in generate(active):
            row = row_of(c)
            nd = row if dmin is None else np.minimum(dmin, row)
            centers.append(c)
            recurse(centers, nd, active)
            centers.pop()
        if centers:
            n_rm = math.ceil(len(active) * (1.0 - 2.0 * k / beta))
            order = sorted(active, key=lambda i: (dmin[i], i))
            recurse(centers, dmin, tuple(sorted(order[n_rm:])))

    recurse([], None, tuple(range(n)))
    assert best_centers is not None
    return CenterSet(centers=best_centers, cost=best_cost)
