"""Barycentric averaging baseline: alternate warpings and section means.

This is the classical Lloyd-style heuristic.  Each round recomputes optimal
p-warpings from the current candidate to all inputs and replaces every vertex
by the coordinate-wise mean of its section.  For p = 2 both half-steps are
exact coordinate descents, so the cost trace cannot increase; for other p the
mean update is heuristic.  A round that fails to improve the cost is not
accepted, so the reported trace is non-increasing for every p.  No
approximation guarantee holds either way; the oracle tests exhibit instances
where the converged cost is strictly worse than optimal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dataset, PointSequence, as_sequence, cost, optimal_sections
from .errors import require
from .simplify import simplify

REL_TOL = 1e-9


@dataclass
class DbaResult:
    sequence: PointSequence
    cost: float
    trace: list[float]  # accepted costs, starting with the initial candidate


def default_dba_init(T: Dataset, ell: int, p: float) -> PointSequence:
    """Input sequence's simplification with the lowest cost, used as the default start."""
    best = None
    best_cost = None
    for tau in T.sequences:
        s = simplify(tau, ell, p).sequence
        c = cost(T, s, p, p)
        if best_cost is None or c < best_cost:
            best, best_cost = s, c
    return best


def dba(T: Dataset, init, p: float, max_iters: int = 50) -> DbaResult:
    """Iterated section-mean averaging from `init`, stopping on stagnation."""
    require(max_iters >= 1, "max_iters must be >= 1")
    current = as_sequence(init)
    current_cost = cost(T, current, p, p)
    trace = [current_cost]
    for _ in range(max_iters):
        secs, _ = optimal_sections(current, T, p)
        updated = PointSequence(
            np.array([sec.values().mean(axis=0) for sec in secs])
        )
        new_cost = cost(T, updated, p, p)
        if current_cost == 0.0 or current_cost - new_cost < REL_TOL * current_cost:
            break
        current, current_cost = updated, new_cost
        trace.append(current_cost)
    return DbaResult(sequence=current, cost=current_cost, trace=trace)
