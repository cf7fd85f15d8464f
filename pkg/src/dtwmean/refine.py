"""(1 + eps)-approximation of the restricted (p, 1)-mean in Euclidean space.

The search works at a ladder of cost scales.  A few sampled input sequences
are simplified to get a rough cost estimate R; halving R down for a bounded
number of rungs guarantees one rung r with n*r within a factor two of the
optimal cost.  At that rung, a grid of cell width proportional to eps*r laid
over balls around a sampled sequence close to the optimum contains, vertex by
vertex, a snapped copy of the optimal mean, so enumerating all short
sequences of grid points and keeping the cheapest yields the guarantee.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._batch import argmin_first, score_candidates
from .core import Dataset, PointSequence
from .errors import CapacityError, require
from .meanapprox import MeanResult
from .simplify import simplify

#: Cap on total enumerated candidates and on grid cells visited per cover.
CANDIDATE_GUARD = 10_000_000
CELL_GUARD = 10_000_000


def grid_point(gamma: float, x) -> np.ndarray:
    """Lower corner of the grid cell of width gamma containing x."""
    require(gamma > 0, "grid cell width must be positive")
    x = np.asarray(x, dtype=float)
    return np.floor(x / gamma) * gamma


@dataclass(frozen=True)
class GridSpec:
    """Cell width and snapping map of one refinement grid."""

    cell_width: float

    def __post_init__(self) -> None:
        require(self.cell_width > 0, "grid cell width must be positive")

    def snap(self, x) -> np.ndarray:
        return grid_point(self.cell_width, x)


@dataclass(frozen=True)
class BallUnion:
    """Union of equal-radius balls centered at a sequence's vertices."""

    centers: np.ndarray  # (k, d)
    radius: float

    def __post_init__(self) -> None:
        require(self.centers.ndim == 2 and self.centers.shape[0] >= 1, "need centers")
        require(self.radius > 0, "radius must be positive")


def _cell_indices_for_ball(center: np.ndarray, r: float, gamma: float):
    lo = np.floor((center - r) / gamma).astype(int)
    hi = np.floor((center + r) / gamma).astype(int)
    return lo, hi


def grid_cover(ball_union: BallUnion, gamma: float) -> np.ndarray:
    """Grid points of all cells of width gamma meeting the ball union.

    Cells are the half-open boxes [g, g + gamma)^d; a cell is kept when it
    contains a point of some ball.  Points are returned sorted by lattice
    index, deduplicated across balls.
    """
    require(gamma > 0, "grid cell width must be positive")
    r = ball_union.radius
    d = ball_union.centers.shape[1]
    kept: set[tuple[int, ...]] = set()
    budget = CELL_GUARD
    for center in ball_union.centers:
        lo, hi = _cell_indices_for_ball(center, r, gamma)
        counts = hi - lo + 1
        ncells = int(np.prod(counts))
        budget -= ncells
        if budget < 0:
            raise CapacityError(
                f"grid cover would visit more than {CELL_GUARD} cells"
            )
        axes = [np.arange(lo[j], hi[j] + 1) for j in range(d)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
        corners = mesh * gamma
        nearest = np.clip(center, corners, corners + gamma)
        dsq = ((center - nearest) ** 2).sum(axis=1)
        on_lower_faces = (center < corners + gamma).all(axis=1)
        hit = (dsq < r * r) | ((dsq == r * r) & on_lower_faces)
        for row in mesh[hit]:
            kept.add(tuple(int(v) for v in row))
    idx = np.array(sorted(kept), dtype=float).reshape(len(kept), d)
    return idx * gamma


def _inscribed_cell_lower_bound(ball_union: BallUnion, gamma: float) -> int:
    # cells inside the cube inscribed in one ball; cheap lower bound on the
    # cover size, used to skip rungs whose cover cannot pass the size test
    d = ball_union.centers.shape[1]
    side = 2.0 * ball_union.radius / math.sqrt(d)
    per_dim = max(0, int(side / gamma) - 1)
    return per_dim**d


@dataclass(frozen=True)
class ScaleLadder:
    """Rough cost estimate R, its halving rungs, and the grid-size budget."""

    R: float
    rungs: tuple[float, ...]
    beta: float

    @classmethod
    def build(
        cls, R: float, n: int, m: int, ell: int, p: float, eps: float, d: int
    ) -> "ScaleLadder":
        require(R > 0, "R must be positive")
        cap = math.ceil(3 + math.log2(m * ell) / p)
        rungs = tuple(R * 2.0**-i / n for i in range(cap + 1))
        beta = 2.0 * (68.0 * m ** (1.0 / p) / eps + 5.0) ** d
        return cls(R=R, rungs=rungs, beta=beta)


def rung_cell_width(r: float, m: int, p: float, eps: float, d: int) -> float:
    return eps * r / ((2.0 * m) ** (1.0 / p) * math.sqrt(d))


def estimate_sample_count(delta: float) -> int:
    """Sequences sampled for the rough cost estimate."""
    return math.ceil(math.log2(2.0 / delta))


def med_appr(
    T: Dataset, eps: float, p: float, delta: float, ell: int, seed: int
) -> MeanResult:
    """(1 + eps)-approximate restricted (p, 1)-mean, success probability 1 - delta.

    Ties in the final argmin resolve to the first candidate in enumeration
    order (sampled simplifications first, then grid tuples rung by rung).
    """
    require(eps > 0, "eps must be positive")
    require(p >= 1, "p must be >= 1")
    require(0 < delta < 1, "delta must lie in (0, 1)")
    require(ell >= 1, "ell must be >= 1")
    n, m, d = T.n, T.m, T.dimension
    if eps > m ** (1.0 / p):
        warnings.warn(
            f"eps={eps} exceeds m^(1/p)={m ** (1.0 / p):.6g}; the approximation "
            "guarantee is only proven up to that value",
            stacklevel=2,
        )

    rng = np.random.default_rng(seed)
    sampled = [
        T.sequences[i]
        for i in rng.integers(0, n, size=estimate_sample_count(delta))
    ]

    simplified = [simplify(tau, ell, p).sequence for tau in sampled]
    simp_blocks = {}
    for s in simplified:
        simp_blocks.setdefault(s.complexity, []).append(s.vertices)
    simp_groups = [
        np.stack(rows) for _, rows in sorted(simp_blocks.items())
    ]
    simp_scores = [score_candidates(T, block, p, 1.0) for block in simp_groups]
    R = min(float(s.min()) for s in simp_scores)

    flags: list[str] = []
    if R == 0.0:
        # a sampled simplification already has zero cost, hence is optimal
        for block, scores in zip(simp_groups, simp_scores):
            i = argmin_first(scores)
            if scores[i] == 0.0:
                return MeanResult(
                    sequence=PointSequence(block[i]),
                    cost=0.0,
                    candidates_scored=sum(b.shape[0] for b in simp_groups),
                    flags=["zero-cost-estimate"],
                )

    ladder = ScaleLadder.build(R, n, m, ell, p, eps, d)
    size_cap = ell * ladder.beta

    # candidate blocks in enumeration order; duplicates across rungs can only
    # tie, and the strict argmin keeps the first occurrence anyway
    blocks: list[np.ndarray] = list(simp_groups)
    total = sum(b.shape[0] for b in blocks)

    contributed = False
    for r in ladder.rungs:
        grid = GridSpec(rung_cell_width(r, m, p, eps, d))
        gamma = grid.cell_width
        for tau in sampled:
            union = BallUnion(centers=tau.vertices, radius=4.0 * r)
            if _inscribed_cell_lower_bound(union, gamma) > size_cap:
                continue
            cover = grid_cover(union, gamma)
            if len(cover) == 0 or len(cover) > size_cap:
                continue
            contributed = True
            added = sum(len(cover) ** L for L in range(1, ell + 1))
            if total + added > CANDIDATE_GUARD:
                raise CapacityError(
                    f"candidate budget {CANDIDATE_GUARD} exceeded at rung r={r!r}"
                )
            total += added
            u = len(cover)
            for L in range(1, ell + 1):
                idx = np.indices((u,) * L).reshape(L, -1).T
                blocks.append(cover[idx.reshape(-1)].reshape(len(idx), L, d))

    if not contributed:
        flags.append("fallback")

    best_cost = math.inf
    best_seq: PointSequence | None = None
    for block in blocks:
        scores = score_candidates(T, block, p, 1.0)
        i = argmin_first(scores)
        if scores[i] < best_cost:
            best_cost = float(scores[i])
            best_seq = PointSequence(block[i])
    assert best_seq is not None
    return MeanResult(
        sequence=best_seq, cost=best_cost, candidates_scored=total, flags=flags
    )
