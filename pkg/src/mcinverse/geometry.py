"""Exact geometry of order polytopes over the unit cube.

For an acyclic arc set A on {0..d-1}, the polytope is
P = { w in [0,1]^d : w[i] >= w[j] for all (i, j) in A }.
The cube splits into d! order simplices of equal volume, one per total
order, so Vol(P) = L / d! where L counts the linear extensions of A.
The centroid follows from uniform order statistics: on the simplex of a
fixed total order, the k-th largest coordinate averages (d+1-k)/(d+1), so
centroid[i] = (d + 1 - avg_rank(i)) / (d + 1) with the rank averaged over
extensions.

Counting and rank-averaging run on a subset DP with exact big integers
(cost O(2^d * d)); enumeration is a separate backtracking routine kept as
an independent cross-check and as the exact-uniform sampler's backbone.
Volumes stay exact rationals; only centroids and samples are floats.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

EXACT_MODE_BOUND = 9       # default d cap for exact extension work
_DP_HARD_CAP = 20          # absolute cap for the 2^d subset DP


class ExactModeUnavailable(RuntimeError):
    """Dimension exceeds the exact-mode bound; use Monte-Carlo fallback."""


class CyclicArcs(ValueError):
    """Order polytopes require an acyclic arc set."""


def _normalize_arcs(d, arcs):
    out = set()
    for i, j in arcs:
        i, j = int(i), int(j)
        if i == j:
            raise ValueError(f"self-loop arc ({i},{i}) not allowed")
        if not (0 <= i < d and 0 <= j < d):
            raise ValueError(f"arc ({i},{j}) out of range for d={d}")
        out.add((i, j))
    return tuple(sorted(out))


def _preds_mask(d, arcs):
    mask = [0] * d
    for i, j in arcs:
        mask[j] |= 1 << i
    return mask


def count_linear_extensions(d, arcs):
    """Number of total orders compatible with `arcs` (0 when cyclic).

    Subset DP over "first element" choices; exact Python integers.
    """
    if d > _DP_HARD_CAP:
        raise ExactModeUnavailable(f"subset DP refused for d={d} > {_DP_HARD_CAP}")
    arcs = _normalize_arcs(d, arcs)
    preds = _preds_mask(d, arcs)
    full = (1 << d) - 1
    h = [0] * (full + 1)
    h[0] = 1
    for s in range(1, full + 1):
        total = 0
        rem = s
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            if preds[v] & s == 0:
                total += h[s & ~(1 << v)]
        h[s] = total
    return h[full]


class OrderPolytope:
    """P = { w in [0,1]^d : w[i] >= w[j] for (i, j) in arcs }, arcs acyclic."""

    def __init__(self, d, arcs, exact_bound=EXACT_MODE_BOUND):
        self.d = int(d)
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {d}")
        self.arcs = _normalize_arcs(self.d, arcs)
        self.exact_bound = int(exact_bound)
        self._preds = _preds_mask(self.d, self.arcs)
        if self._topological_order() is None:
            raise CyclicArcs("arc set has a directed cycle; the polytope "
                             "would be degenerate")
        self._h = None
        self._extensions = None
        self._centroid_exact = None

    # -- structural helpers ------------------------------------------------

    def _topological_order(self):
        # min-index Kahn, mirrors the arc state's deterministic order
        import heapq
        d = self.d
        indeg = [0] * d
        out = [[] for _ in range(d)]
        for i, j in self.arcs:
            out[i].append(j)
            indeg[j] += 1
        heap = [v for v in range(d) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for u in out[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    heapq.heappush(heap, u)
        return order if len(order) == d else None

    def _require_exact(self, what):
        if self.d > self.exact_bound:
            raise ExactModeUnavailable(
                f"{what} needs exact mode, but d={self.d} exceeds the "
                f"bound {self.exact_bound}")

    def _dp(self):
        if self._h is None:
            full = (1 << self.d) - 1
            preds = self._preds
            h = [0] * (full + 1)
            h[0] = 1
            for s in range(1, full + 1):
                total = 0
                rem = s
                while rem:
                    v = (rem & -rem).bit_length() - 1
                    rem &= rem - 1
                    if preds[v] & s == 0:
                        total += h[s & ~(1 << v)]
                h[s] = total
            self._h = h
        return self._h

    # -- linear extensions ---------------------------------------------------

    def enumerate_extensions(self):
        """All compatible total orders, largest-weight index first,
        in ascending lexicographic order."""
        self._require_exact("extension enumeration")
        if self._extensions is not None:
            return self._extensions
        d = self.d
        preds = self._preds
        out = []
        seq = []

        def rec(placed):
            if len(seq) == d:
                out.append(tuple(seq))
                return
            for v in range(d):
                bit = 1 << v
                if placed & bit:
                    continue
                # v may come next iff all its predecessors are placed
                if preds[v] & ~placed:
                    continue
                seq.append(v)
                rec(placed | bit)
                seq.pop()

        rec(0)
        self._extensions = out
        return out

    def extension_count(self):
        self._require_exact("extension counting")
        return self._dp()[(1 << self.d) - 1]

    def volume(self):
        """Exact Lebesgue volume as a Fraction, L / d!."""
        return Fraction(self.extension_count(), math.factorial(self.d))

    # -- centroid --------------------------------------------------------

    def centroid_exact(self):
        """Exact center of gravity, one Fraction per coordinate.

        avg_rank(i) is accumulated from the subset DP: a prefix set S
        (closed under predecessors) with all of i's predecessors inside
        puts i at position |S|+1 in h(S) * h(rest) extensions.
        """
        self._require_exact("exact centroid")
        if self._centroid_exact is not None:
            return self._centroid_exact
        d = self.d
        preds = self._preds
        h = self._dp()
        full = (1 << d) - 1
        total = h[full]
        rank_sum = [0] * d
        for s in range(full + 1):
            if h[s] == 0:
                continue
            # s must be prefix-closed: every member's predecessors inside
            rem = s
            closed = True
            while rem:
                v = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                if preds[v] & ~s:
                    closed = False
                    break
            if not closed:
                continue
            k = s.bit_count() + 1
            hs = h[s]
            for i in range(d):
                bit = 1 << i
                if s & bit:
                    continue
                if preds[i] & ~s:
                    continue
                rank_sum[i] += k * hs * h[full & ~s & ~bit]
        denom = d + 1
        cent = tuple(
            Fraction(denom * total - rank_sum[i], denom * total)
            for i in range(d))
        self._centroid_exact = cent
        return cent

    def centroid(self):
        """Center of gravity as floats (rounded from the exact value)."""
        return tuple(float(c) for c in self.centroid_exact())

    def tie_broken_centroid(self):
        """Centroid with exactly-tied coordinates separated.

        Ties are detected on the exact rationals, then split by offsets
        k * eps ordered by the deterministic topological rank (earlier rank
        gets the larger value).  eps = 1e-9 * s with s the minimum strict
        arc slack at the centroid (1.0 when no arcs), floored at 1e-6 so
        the offsets survive float64 rounding.  The spread stays far below
        any strict coordinate gap, so no exact strict order ever flips and
        the point remains inside the polytope.
        """
        cent = self.centroid_exact()
        vals = [float(c) for c in cent]
        groups = {}
        for i, c in enumerate(cent):
            groups.setdefault(c, []).append(i)
        if all(len(g) == 1 for g in groups.values()):
            return tuple(vals)
        if self.arcs:
            slack = min(float(cent[i] - cent[j]) for i, j in self.arcs)
            s = max(slack, 1e-6)
        else:
            s = 1.0
        eps = 1e-9 * s
        order = self._topological_order()
        rank = {v: k for k, v in enumerate(order)}
        for members in groups.values():
            if len(members) == 1:
                continue
            members = sorted(members, key=lambda v: rank[v])
            n = len(members)
            for pos, v in enumerate(members):
                vals[v] += (n - 1 - pos) * eps
        return tuple(vals)

    # -- membership and sampling ---------------------------------------------

    def contains_weights(self, w, strict=False):
        w = tuple(float(v) for v in w)
        if len(w) != self.d:
            return False
        if strict:
            return (all(0.0 < v < 1.0 for v in w)
                    and all(w[i] > w[j] for i, j in self.arcs))
        return (all(0.0 <= v <= 1.0 for v in w)
                and all(w[i] >= w[j] for i, j in self.arcs))

    def sample_uniform(self, seed, n):
        """n samples from P, exactly uniform in exact mode.

        Exact mode draws a uniform linear extension, then sorts d uniform
        variates into it.  Beyond the exact bound a hit-and-run walk is
        used instead: approximately uniform only, no certified mixing
        bound (documented fallback).
        """
        n = int(n)
        if n < 0:
            raise ValueError("sample count must be non-negative")
        if n == 0:
            return np.empty((0, self.d), dtype=float)
        rng = np.random.default_rng(seed)
        if self.d <= self.exact_bound:
            exts = np.array(self.enumerate_extensions(), dtype=np.intp)
            idx = rng.integers(0, len(exts), size=n)
            u = rng.random((n, self.d))
            u.sort(axis=1)
            desc = u[:, ::-1]
            out = np.empty((n, self.d), dtype=float)
            rows = np.arange(n)[:, None]
            out[rows, exts[idx]] = desc
            return out
        return self._hit_and_run(rng, n)

    def _hit_and_run(self, rng, n, burn_in=None, thin=None):
        d = self.d
        if burn_in is None:
            burn_in = 100 * d
        if thin is None:
            thin = d
        order = self._topological_order()
        x = np.empty(d)
        for k, v in enumerate(order):
            x[v] = (d - k) / (d + 1)   # strictly interior start
        out = np.empty((n, d), dtype=float)
        steps = burn_in + n * thin
        kept = 0
        for step in range(steps):
            direction = rng.standard_normal(d)
            lo, hi = -math.inf, math.inf
            for k in range(d):
                dk = direction[k]
                if dk > 1e-300:
                    hi = min(hi, (1.0 - x[k]) / dk)
                    lo = max(lo, (0.0 - x[k]) / dk)
                elif dk < -1e-300:
                    hi = min(hi, (0.0 - x[k]) / dk)
                    lo = max(lo, (1.0 - x[k]) / dk)
            for i, j in self.arcs:
                dv = direction[i] - direction[j]
                gap = x[i] - x[j]
                if dv > 1e-300:
                    lo = max(lo, -gap / dv)
                elif dv < -1e-300:
                    hi = min(hi, -gap / dv)
            if hi > lo:
                x = x + rng.uniform(lo, hi) * direction
            if step >= burn_in and (step - burn_in) % thin == thin - 1:
                out[kept] = x
                kept += 1
        return out

    def approx_centroid(self, seed, n=20000):
        """Monte-Carlo centroid estimate (fallback mode; no exactness)."""
        return tuple(self.sample_uniform(seed, n).mean(axis=0))

    def split_counts(self, i, j):
        """Extension counts on both sides of the cut w[i] >= w[j].

        Returns (with_arc_ij, with_arc_ji); a side whose added arc closes a
        cycle counts 0.  The two sides always sum to the total count.
        """
        self._require_exact("halfspace split")
        base = list(self.arcs)
        keep = count_linear_extensions(self.d, base + [(i, j)])
        flip = count_linear_extensions(self.d, base + [(j, i)])
        return keep, flip

    def descriptor(self):
        return {"d": self.d, "arcs": [list(a) for a in self.arcs]}
