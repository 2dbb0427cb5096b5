"""Directed-order knowledge state over coordinate indices.

An ArcSet on {0..d-1} stores ordered pairs (i, j) meaning "weight i must
exceed weight j".  Arcs only accumulate between restarts; a restart wipes
the state and bumps the segment counter.  Topological weight assignment
turns an acyclic state into a concrete estimate with distinct components.
"""

from __future__ import annotations

import heapq


class CyclicState(ValueError):
    """Operation requires an acyclic arc set."""


class ArcSet:
    """Mutable single-writer arc state; snapshots are cheap frozensets."""

    def __init__(self, d):
        if d < 1:
            raise ValueError(f"dimension must be positive, got {d}")
        self.d = int(d)
        self._arcs = set()
        self.segment = 0   # restarts so far
        self.version = 0   # bumped on every mutation, for weight caching

    def __len__(self):
        return len(self._arcs)

    def __contains__(self, pair):
        return tuple(pair) in self._arcs

    def arcs(self):
        """Sorted pair list (the serialization order)."""
        return sorted(self._arcs)

    def snapshot(self):
        return frozenset(self._arcs)

    def _check_pair(self, i, j):
        if i == j:
            raise ValueError(f"self-loop arc ({i},{i}) not allowed")
        if not (0 <= i < self.d and 0 <= j < self.d):
            raise ValueError(f"arc ({i},{j}) out of range for d={self.d}")
        return (int(i), int(j))

    def add_arcs(self, pairs):
        """Union in `pairs`; returns the sorted list of genuinely new ones."""
        new = []
        for i, j in pairs:
            p = self._check_pair(i, j)
            if p not in self._arcs:
                self._arcs.add(p)
                new.append(p)
        if new:
            self.version += 1
        return sorted(new)

    def restart(self):
        """Clear all arcs and open a new segment."""
        self._arcs.clear()
        self.segment += 1
        self.version += 1

    def has_cycle(self):
        """Kahn peeling; True iff some vertex is never freed."""
        indeg = [0] * self.d
        out = [[] for _ in range(self.d)]
        for i, j in self._arcs:
            out[i].append(j)
            indeg[j] += 1
        stack = [v for v in range(self.d) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for u in out[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    stack.append(u)
        return seen != self.d

    def topological_order(self):
        """Kahn with a min-index heap: deterministic, smallest index first."""
        indeg = [0] * self.d
        out = [[] for _ in range(self.d)]
        for i, j in self._arcs:
            out[i].append(j)
            indeg[j] += 1
        heap = [v for v in range(self.d) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for u in out[v]:
                indeg[u] -= 1
                if indeg[u] == 0:
                    heapq.heappush(heap, u)
        if len(order) != self.d:
            raise CyclicState("arc set has a directed cycle")
        return order

    def topological_weights(self):
        """Distinct weights in (0,1) honoring every arc strictly.

        Index at position k (0-based) of the topological order gets
        (d - k) / (d + 1), so the first listed index is largest.
        """
        d = self.d
        w = [0.0] * d
        for k, v in enumerate(self.topological_order()):
            w[v] = (d - k) / (d + 1)
        return tuple(w)
