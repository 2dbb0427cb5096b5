"""Linear maximization over M-convex sets.

Local exchange optimality characterizes global optimality here: a feasible
x maximizes <w, .> iff w[i] >= w[j] for every feasible single-unit move
x - e_i + e_j.  `argmax_exchange` runs the resulting local search,
`argmax_bruteforce` is the independent exhaustive oracle, and `argmax`
dispatches to a family greedy fast path when one exists (cross-checked
against both slow routes in the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mconvex import NotInSet, move


@dataclass(frozen=True)
class Objective:
    """Real weight vector; `distinct` records pairwise-distinct components."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        if any(not math.isfinite(v) for v in w):
            raise ValueError("objective weights must be finite")
        object.__setattr__(self, "weights", w)

    @property
    def d(self):
        return len(self.weights)

    @property
    def distinct(self):
        return len(set(self.weights)) == len(self.weights)


def _weights(w, d):
    if isinstance(w, Objective):
        w = w.weights
    w = tuple(float(v) for v in w)
    if len(w) != d:
        raise ValueError(f"objective has length {len(w)}, set dimension {d}")
    if any(not math.isfinite(v) for v in w):
        raise ValueError("objective weights must be finite")
    return w


def argmax_exchange(mset, w):
    """Maximize <w, x> by steepest single-unit exchange moves.

    Starts from the set's canonical point; while some feasible move
    x - e_i + e_j has w[j] > w[i], takes the move with the largest gain
    (ties to the lexicographically smallest pair).  Each move strictly
    increases the objective, so the walk terminates; the endpoint is
    exchange-optimal and hence a global maximizer.  Unique when w has
    distinct components.
    """
    w = _weights(w, mset.d)
    x = mset.canonical_start()
    while True:
        best = None
        best_gain = 0.0
        for i, j in mset.exchange_neighbors(x):
            gain = w[j] - w[i]
            if gain > best_gain or (gain == best_gain and best is not None
                                    and (i, j) < best):
                best = (i, j)
                best_gain = gain
        if best is None:
            return x
        x = move(x, *best)


def argmax_bruteforce(mset, w):
    """All maximizers of <w, .> by exhaustive scan, in enumeration order."""
    w = _weights(w, mset.d)
    pts = mset.enumerate_points()
    vals = np.array(pts, dtype=float) @ np.array(w)
    best = vals.max()
    return [pts[k] for k in range(len(pts)) if vals[k] == best]


def is_exchange_optimal(mset, w, x):
    """True iff no feasible move x - e_i + e_j has w[j] > w[i]."""
    w = _weights(w, mset.d)
    return all(w[i] >= w[j] for i, j in mset.exchange_neighbors(x))


def argmax(mset, w):
    """Maximizer of <w, .>: family greedy when available, else local search.

    Both routes return the same point (the unique maximizer) whenever w has
    distinct components.
    """
    greedy = getattr(mset, "_argmax_greedy", None)
    if greedy is not None:
        return greedy(_weights(w, mset.d))
    return argmax_exchange(mset, w)


def dot(w, p):
    return sum(wi * pi for wi, pi in zip(w, p))
