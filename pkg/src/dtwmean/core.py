"""Point sequences, warpings and the p-DTW distance.

Conventions used throughout the package:

* vertices are rows of ``(m, d)`` float64 arrays,
* warping index pairs are 1-based, matching the usual DTW grid picture,
* every cost comparison is an exact float comparison (no tolerance), so
  argmins are deterministic and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, require

DistanceFn = Callable[[np.ndarray, np.ndarray], float]

#: Hard cap on exhaustive warping enumeration.
WARPING_ENUMERATION_GUARD = 1_000_000

_STEPS = ((1, 1), (1, 0), (0, 1))


def euclidean_distance(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.linalg.norm(x - y))


@dataclass(frozen=True)
class MetricSpace:
    """A ground metric evaluated on vertex coordinate vectors.

    ``distance`` must be a metric: symmetric, zero on the diagonal and
    satisfying the triangle inequality.  Non-Euclidean spaces can be plugged
    in by resolving opaque element identifiers inside ``distance``.
    """

    name: str
    distance: DistanceFn


EUCLIDEAN = MetricSpace("euclidean", euclidean_distance)


class PointSequence:
    """An ordered tuple of points in R^d, stored as a read-only (m, d) array."""

    __slots__ = ("vertices",)

    def __init__(self, vertices) -> None:
        try:
            arr = np.array(vertices, dtype=float)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"malformed vertex data: {exc}") from None
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise DomainError(f"vertices must form an (m, d) array, got shape {arr.shape}")
        m, d = arr.shape
        require(m >= 1, "a point sequence needs at least one vertex")
        require(d >= 1, "points need at least one coordinate")
        if not np.all(np.isfinite(arr)):
            raise DomainError("vertex coordinates must be finite")
        arr.setflags(write=False)
        self.vertices = arr

    @property
    def complexity(self) -> int:
        return self.vertices.shape[0]

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    def key(self) -> tuple:
        """Hashable exact-coordinate key, usable for deduplication."""
        return tuple(map(tuple, self.vertices))

    def as_list(self) -> list[list[float]]:
        return self.vertices.tolist()

    def __len__(self) -> int:
        return self.complexity

    def __getitem__(self, i: int) -> np.ndarray:
        return self.vertices[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSequence):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and bool(
            np.all(self.vertices == other.vertices)
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"PointSequence({self.vertices.tolist()!r})"


def as_sequence(obj) -> PointSequence:
    return obj if isinstance(obj, PointSequence) else PointSequence(obj)


@dataclass
class Dataset:
    """A finite input set of point sequences over one Euclidean space."""

    sequences: list[PointSequence]

    def __post_init__(self) -> None:
        self.sequences = [as_sequence(s) for s in self.sequences]
        require(len(self.sequences) >= 1, "a dataset needs at least one sequence")
        d = self.sequences[0].dimension
        for i, s in enumerate(self.sequences):
            if s.dimension != d:
                raise DomainError(
                    f"sequence {i} has dimension {s.dimension}, expected {d}"
                )

    @property
    def n(self) -> int:
        return len(self.sequences)

    @property
    def m(self) -> int:
        """Maximum complexity over the dataset."""
        return max(s.complexity for s in self.sequences)

    @property
    def dimension(self) -> int:
        return self.sequences[0].dimension

    def vertex_pool(self) -> np.ndarray:
        """Distinct vertices of all sequences, in first-occurrence order."""
        seen: dict[tuple, None] = {}
        for s in self.sequences:
            for v in s.vertices:
                seen.setdefault(tuple(v), None)
        return np.array(list(seen), dtype=float)


@dataclass(frozen=True)
class ProblemParams:
    """Parameter bundle (p, q, ell, eps, delta) shared by the approximation algorithms."""

    p: float = 1.0
    q: float = 1.0
    ell: int = 2
    eps: float = 1.0
    delta: float = 0.1

    def __post_init__(self) -> None:
        require(self.p >= 1, "p must be >= 1")
        require(self.q >= 1, "q must be >= 1")
        require(self.ell >= 1, "ell must be >= 1")
        require(self.eps > 0, "eps must be positive")
        require(0 < self.delta < 1, "delta must lie in (0, 1)")


@dataclass(frozen=True)
class Warping:
    """A monotone coupling path through the index grid of two sequences.

    Pairs are 1-based, start at (1, 1), end at (m1, m2) and advance by steps
    from {(0,1), (1,0), (1,1)}.
    """

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def validate(self, m1: int, m2: int) -> None:
        require(len(self.pairs) >= 1, "warping has no pairs")
        require(self.pairs[0] == (1, 1), "warping must start at (1, 1)")
        require(
            self.pairs[-1] == (m1, m2),
            f"warping must end at ({m1}, {m2}), got {self.pairs[-1]}",
        )
        for (i0, j0), (i1, j1) in zip(self.pairs, self.pairs[1:]):
            if (i1 - i0, j1 - j0) not in _STEPS:
                raise DomainError(
                    f"illegal warping step from ({i0}, {j0}) to ({i1}, {j1})"
                )
        require(len(self.pairs) <= m1 + m2 - 1, "warping longer than m1 + m2 - 1")


def identity_warping(m: int) -> Warping:
    return Warping(tuple((i, i) for i in range(1, m + 1)))


@dataclass(frozen=True)
class DtwResult:
    """A p-DTW distance together with one warping attaining it."""

    distance: float
    warping: Warping


def pow_dist_matrix(
    a: np.ndarray, b: np.ndarray, p: float, metric: MetricSpace = EUCLIDEAN
) -> np.ndarray:
    """Matrix of pairwise ground distances raised to the p-th power."""
    if metric is EUCLIDEAN:
        diff = a[:, None, :] - b[None, :, :]
        dists = np.sqrt((diff * diff).sum(axis=-1))
    else:
        dists = np.empty((len(a), len(b)))
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                dists[i, j] = metric.distance(x, y)
    return dists**p


def dtw(sigma, tau, p: float, metric: MetricSpace = EUCLIDEAN) -> DtwResult:
    """p-DTW distance between two sequences, with one optimal warping.

    Standard O(m1*m2) dynamic program over the matrix of p-th-power ground
    distances.  Backtracking ties are broken by the fixed step preference
    (1,1) > (1,0) > (0,1) so the returned warping is deterministic.
    """
    a = as_sequence(sigma)
    b = as_sequence(tau)
    require(p >= 1, "p must be >= 1")
    if a.dimension != b.dimension:
        raise DomainError(
            f"dimension mismatch: {a.dimension} vs {b.dimension}"
        )
    powd = pow_dist_matrix(a.vertices, b.vertices, p, metric)
    m1, m2 = powd.shape

    acc = np.empty_like(powd)
    acc[0, 0] = powd[0, 0]
    for j in range(1, m2):
        acc[0, j] = acc[0, j - 1] + powd[0, j]
    for i in range(1, m1):
        acc[i, 0] = acc[i - 1, 0] + powd[i, 0]
        row = acc[i]
        prev = acc[i - 1]
        for j in range(1, m2):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if row[j - 1] < best:
                best = row[j - 1]
            row[j] = powd[i, j] + best

    # backtrack, preferring diagonal, then advancing in sigma, then in tau
    i, j = m1 - 1, m2 - 1
    rev = [(m1, m2)]
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag, up, left = acc[i - 1, j - 1], acc[i - 1, j], acc[i, j - 1]
            best = min(diag, up, left)
            if diag == best:
                i -= 1
                j -= 1
            elif up == best:
                i -= 1
            else:
                j -= 1
        rev.append((i + 1, j + 1))
    rev.reverse()
    distance = float(acc[m1 - 1, m2 - 1]) ** (1.0 / p)
    return DtwResult(distance=distance, warping=Warping(tuple(rev)))


def warping_count(m1: int, m2: int) -> int:
    """Number of (m1, m2)-warpings (a Delannoy number)."""
    require(m1 >= 1 and m2 >= 1, "sequence lengths must be >= 1")
    row = [1] * m2
    for _ in range(1, m1):
        new = [1] * m2
        for j in range(1, m2):
            new[j] = new[j - 1] + row[j] + row[j - 1]
        row = new
    return row[m2 - 1]


def enumerate_warpings(m1: int, m2: int) -> list[Warping]:
    """All (m1, m2)-warpings, depth-first with step order (1,1), (1,0), (0,1)."""
    count = warping_count(m1, m2)
    if count > WARPING_ENUMERATION_GUARD:
        raise CapacityError(
            f"{count} warpings exceed the enumeration guard of {WARPING_ENUMERATION_GUARD}"
        )
    out: list[Warping] = []
    path: list[tuple[int, int]] = [(1, 1)]

    def extend(i: int, j: int) -> None:
        if i == m1 and j == m2:
            out.append(Warping(tuple(path)))
            return
        for di, dj in _STEPS:
            ni, nj = i + di, j + dj
            if ni <= m1 and nj <= m2:
                path.append((ni, nj))
                extend(ni, nj)
                path.pop()

    extend(1, 1)
    return out


def warping_pow_cost(
    powd: np.ndarray, pairs: Iterable[tuple[int, int]]
) -> float:
    """Sum of p-th-power distances along a warping, folded in pair order."""
    total = 0.0
    for i, j in pairs:
        total = total + powd[i - 1, j - 1]
    return total


def cost(T: Dataset, c, p: float, q: float, metric: MetricSpace = EUCLIDEAN) -> float:
    """Sum over the dataset of dtw_p(c, tau)^q."""
    cseq = as_sequence(c)
    require(q >= 1, "q must be >= 1")
    total = 0.0
    for tau in T.sequences:
        total = total + dtw(cseq, tau, p, metric).distance ** q
    return total


@dataclass
class Section:
    """Multiset of input vertices warped to one vertex of a reference sequence.

    ``members`` keeps (sequence index, vertex index, vertex) provenance,
    1-based indices.
    """

    index: int
    members: list[tuple[int, int, np.ndarray]] = field(default_factory=list)

    def values(self) -> np.ndarray:
        return np.array([v for (_, _, v) in self.members], dtype=float)

    def __len__(self) -> int:
        return len(self.members)


def sections(c, T: Dataset, warpings: Sequence[Warping]) -> list[Section]:
    """Partition of all warped pairs by the reference-sequence vertex index."""
    cseq = as_sequence(c)
    require(
        len(warpings) == T.n, f"expected {T.n} warpings, got {len(warpings)}"
    )
    for i, (w, tau) in enumerate(zip(warpings, T.sequences)):
        try:
            w.validate(cseq.complexity, tau.complexity)
        except DomainError as exc:
            raise DomainError(f"warping {i} is invalid: {exc}") from exc
    out = [Section(index=j + 1) for j in range(cseq.complexity)]
    for i, (w, tau) in enumerate(zip(warpings, T.sequences), start=1):
        for j, k in w.pairs:
            out[j - 1].members.append((i, k, tau.vertices[k - 1]))
    return out


def optimal_sections(
    c, T: Dataset, p: float, metric: MetricSpace = EUCLIDEAN
) -> tuple[list[Section], list[Warping]]:
    """Sections of c under optimal p-warpings computed by :func:`dtw`."""
    cseq = as_sequence(c)
    warpings = [dtw(cseq, tau, p, metric).warping for tau in T.sequences]
    return sections(cseq, T, warpings), warpings


def weak_triangle_check(
    x, y, z, p: float, metric: MetricSpace = EUCLIDEAN
) -> bool:
    """Check dtw_p(x,z) <= max(|x|,|z|)^(1/p) * (dtw_p(x,y) + dtw_p(y,z)).

    The relaxed triangle inequality guarantees this holds for every triple,
    so the check is a test utility rather than a runtime guard.
    """
    xs, ys, zs = as_sequence(x), as_sequence(y), as_sequence(z)
    m1 = max(xs.complexity, zs.complexity)
    lhs = dtw(xs, zs, p, metric).distance
    rhs = m1 ** (1.0 / p) * (
        dtw(xs, ys, p, metric).distance + dtw(ys, zs, p, metric).distance
    )
    return lhs <= rhs
