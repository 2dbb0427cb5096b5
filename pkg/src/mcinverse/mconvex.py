"""M-convex sets of integer points: membership, enumeration, exchange moves.

A finite non-empty X in Z^d is M-convex when for every x, y in X and every
index i with x[i] > y[i] there is some j with x[j] < y[j] such that both
x - e_i + e_j and y + e_i - e_j stay in X.  Matroid bases written as 0/1
indicator vectors are the canonical example; capped integer allocations
extend them off the hypercube.  Every point of such a set has the same
coordinate sum, which `verify_m_convexity` checks implicitly.

Points are plain tuples of ints.  Set handles are immutable after
construction and safe for concurrent reads.
"""

from __future__ import annotations

import math
from itertools import combinations

DEFAULT_MAX_POINTS = 10**6


class DimensionMismatch(ValueError):
    """Point length does not match the set's ambient dimension."""


class EnumerationLimit(RuntimeError):
    """Instance exceeds its enumeration guard; refuse rather than truncate."""


class NotInSet(ValueError):
    """Operation requires a feasible point but got one outside the set."""


def as_point(coords):
    """Coerce a sequence of integral values to an int tuple."""
    out = []
    for c in coords:
        ci = int(c)
        if ci != c:
            raise ValueError(f"non-integer coordinate {c!r}")
        out.append(ci)
    return tuple(out)


def unit(d, i):
    """Standard basis vector e_i as an int tuple."""
    return tuple(1 if k == i else 0 for k in range(d))


def move(x, i, j):
    """x - e_i + e_j."""
    y = list(x)
    y[i] -= 1
    y[j] += 1
    return tuple(y)


class MConvexSet:
    """Oracle-style handle for a finite M-convex set.

    Subclasses provide `_contains`, `count`, and `_generate`; the base class
    supplies the exchange-neighborhood scan, enumeration with a size guard,
    and the brute-force M-convexity check.  Families may override
    `exchange_neighbors`, `canonical_start`, and `_argmax_greedy` with
    faster equivalents (the generic paths stay available for cross-checks).
    """

    family = "abstract"

    def __init__(self, d, max_points=DEFAULT_MAX_POINTS):
        if d < 1:
            raise ValueError(f"dimension must be positive, got {d}")
        self.d = int(d)
        self.max_points = int(max_points)

    # -- membership ------------------------------------------------------

    def contains(self, p) -> bool:
        p = self._check_point(p)
        return self._contains(p)

    def _contains(self, p) -> bool:
        raise NotImplementedError

    def _check_point(self, p):
        p = as_point(p)
        if len(p) != self.d:
            raise DimensionMismatch(
                f"point has length {len(p)}, set dimension is {self.d}")
        return p

    # -- enumeration -----------------------------------------------------

    def count(self) -> int:
        """Exact number of points, computed without enumerating."""
        raise NotImplementedError

    def _generate(self):
        raise NotImplementedError

    def enumerate_points(self):
        """All points in ascending lexicographic order.

        Refuses with EnumerationLimit when count() exceeds the guard.
        """
        n = self.count()
        if n > self.max_points:
            raise EnumerationLimit(
                f"{self.describe()} has {n} points, enumeration guard is "
                f"{self.max_points}")
        return sorted(self._generate())

    def canonical_start(self):
        """Deterministic feasible point (lexicographically smallest)."""
        return self.enumerate_points()[0]

    # -- exchange structure ----------------------------------------------

    def exchange_neighbors(self, x):
        """All ordered pairs (i, j), i != j, with x - e_i + e_j feasible.

        Sorted lexicographically.  Raises NotInSet for infeasible x.
        """
        x = self._check_point(x)
        if not self._contains(x):
            raise NotInSet(f"{x} is not in {self.describe()}")
        return self._exchange_neighbors(x)

    def _exchange_neighbors(self, x):
        d = self.d
        pairs = []
        for i in range(d):
            for j in range(d):
                if i != j and self._contains(move(x, i, j)):
                    pairs.append((i, j))
        return pairs

    def verify_m_convexity(self) -> bool:
        """Brute-force the exchange property over every point pair."""
        pts = self.enumerate_points()
        lookup = set(pts)
        d = self.d
        for x in pts:
            for y in pts:
                for i in range(d):
                    if x[i] <= y[i]:
                        continue
                    ok = False
                    for j in range(d):
                        if x[j] < y[j] and move(x, i, j) in lookup \
                                and move(y, j, i) in lookup:
                            ok = True
                            break
                    if not ok:
                        return False
        return True

    # -- descriptors -------------------------------------------------------

    def descriptor(self) -> dict:
        """Serializable family tag + parameters (see harness config schema)."""
        raise NotImplementedError

    def describe(self) -> str:
        return f"{self.family}({self.descriptor()})"

    def __repr__(self):
        return self.describe()


class UniformMatroid(MConvexSet):
    """Indicator vectors of all m-element subsets of {0..d-1}."""

    family = "uniform_matroid"

    def __init__(self, d, m, max_points=DEFAULT_MAX_POINTS):
        super().__init__(d, max_points)
        if not 0 <= m <= d:
            raise ValueError(f"need 0 <= m <= d, got m={m}, d={d}")
        self.m = int(m)

    def _contains(self, p):
        return all(c in (0, 1) for c in p) and sum(p) == self.m

    def count(self):
        return math.comb(self.d, self.m)

    def _generate(self):
        for sub in combinations(range(self.d), self.m):
            p = [0] * self.d
            for i in sub:
                p[i] = 1
            yield tuple(p)

    def canonical_start(self):
        return (0,) * (self.d - self.m) + (1,) * self.m

    def _exchange_neighbors(self, x):
        ones = [i for i in range(self.d) if x[i] == 1]
        zeros = [j for j in range(self.d) if x[j] == 0]
        return sorted((i, j) for i in ones for j in zeros)

    def _argmax_greedy(self, w):
        # top-m coordinates, ties to the smaller index
        order = sorted(range(self.d), key=lambda i: (-w[i], i))
        p = [0] * self.d
        for i in order[: self.m]:
            p[i] = 1
        return tuple(p)

    def descriptor(self):
        return {"family": self.family, "d": self.d, "m": self.m}


class _UnionFind:
    """Array union-find with path compression, for spanning-tree checks."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


class GraphicMatroid(MConvexSet):
    """Spanning-tree edge indicators of a connected graph.

    Dimension equals the number of edges; parallel edges are allowed,
    self-loops are not.  Membership is a union-find cycle check on the
    selected edges.
    """

    family = "graphic_matroid"

    def __init__(self, n_vertices, edges, max_points=DEFAULT_MAX_POINTS):
        edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
        super().__init__(len(edges), max_points)
        self.n = int(n_vertices)
        if self.n < 1:
            raise ValueError("need at least one vertex")
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop edge ({u},{v}) not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of vertex range")
        self.edges = edges
        if not self._connected():
            raise ValueError("graph must be connected")

    def _connected(self):
        uf = _UnionFind(self.n)
        comps = self.n
        for u, v in self.edges:
            if uf.union(u, v):
                comps -= 1
        return comps == 1

    def _contains(self, p):
        if any(c not in (0, 1) for c in p) or sum(p) != self.n - 1:
            return False
        uf = _UnionFind(self.n)
        for k, c in enumerate(p):
            if c and not uf.union(*self.edges[k]):
                return False  # selected edges form a cycle
        return True

    def count(self):
        # Kirchhoff: integer determinant of the reduced Laplacian (Bareiss).
        if self.n == 1:
            return 1
        n = self.n - 1
        lap = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            lap[u][u] += 1
            lap[v][v] += 1
            lap[u][v] -= 1
            lap[v][u] -= 1
        a = [row[:n] for row in lap[:n]]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for r in range(k + 1, n):
                    if a[r][k] != 0:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def _generate(self):
        # backtrack over edge indices; prune cycles and infeasible suffixes
        d, need = self.d, self.n - 1
        chosen = []

        def rec(k, uf, picked):
            if picked == need:
                p = [0] * d
                for e in chosen:
                    p[e] = 1
                yield tuple(p)
                return
            if d - k < need - picked:
                return
            for e in range(k, d):
                u, v = self.edges[e]
                nf = _UnionFind(self.n)
                nf.parent = uf.parent[:]
                if nf.union(u, v):
                    chosen.append(e)
                    yield from rec(e + 1, nf, picked + 1)
                    chosen.pop()

        yield from rec(0, _UnionFind(self.n), 0)

    def canonical_start(self):
        # latest-index spanning tree = lexicographically smallest indicator
        uf = _UnionFind(self.n)
        p = [0] * self.d
        for e in range(self.d - 1, -1, -1):
            if uf.union(*self.edges[e]):
                p[e] = 1
        return tuple(p)

    def _exchange_neighbors(self, x):
        # removing tree edge i splits the tree; any non-tree edge j across
        # the split reconnects it
        tree = [e for e in range(self.d) if x[e] == 1]
        non_tree = [e for e in range(self.d) if x[e] == 0]
        adj = {v: [] for v in range(self.n)}
        for e in tree:
            u, v = self.edges[e]
            adj[u].append((v, e))
            adj[v].append((u, e))
        pairs = []
        for i in tree:
            side = [False] * self.n
            root = self.edges[i][0]
            side[root] = True
            stack = [root]
            while stack:
                u = stack.pop()
                for v, e in adj[u]:
                    if e != i and not side[v]:
                        side[v] = True
                        stack.append(v)
            for j in non_tree:
                a, b = self.edges[j]
                if side[a] != side[b]:
                    pairs.append((i, j))
        return sorted(pairs)

    def _argmax_greedy(self, w):
        # Kruskal on descending weight over all edges (matroid greedy)
        order = sorted(range(self.d), key=lambda e: (-w[e], e))
        uf = _UnionFind(self.n)
        p = [0] * self.d
        for e in order:
            if uf.union(*self.edges[e]):
                p[e] = 1
        return tuple(p)

    def descriptor(self):
        return {"family": self.family, "n": self.n,
                "edges": [list(e) for e in self.edges]}


class PartitionMatroid(MConvexSet):
    """0/1 vectors of weight m obeying per-block capacity caps.

    `blocks` partitions {0..d-1}; a point selects at most capacities[b]
    indices inside block b and exactly m indices in total (the truncation
    of the partition matroid to rank m).
    """

    family = "partition_matroid"

    def __init__(self, blocks, capacities, m, max_points=DEFAULT_MAX_POINTS):
        blocks = [sorted(int(i) for i in b) for b in blocks]
        d = sum(len(b) for b in blocks)
        super().__init__(d, max_points)
        seen = sorted(i for b in blocks for i in b)
        if seen != list(range(d)):
            raise ValueError("blocks must partition 0..d-1")
        if len(capacities) != len(blocks):
            raise ValueError("one capacity per block required")
        self.blocks = blocks
        self.capacities = [int(c) for c in capacities]
        if any(c < 0 for c in self.capacities):
            raise ValueError("capacities must be non-negative")
        self.m = int(m)
        rank = sum(min(c, len(b)) for b, c in zip(blocks, self.capacities))
        if not 0 <= self.m <= rank:
            raise ValueError(f"need 0 <= m <= {rank}, got m={m}")
        self._block_of = [0] * d
        for b, idxs in enumerate(blocks):
            for i in idxs:
                self._block_of[i] = b

    def _contains(self, p):
        if any(c not in (0, 1) for c in p) or sum(p) != self.m:
            return False
        for idxs, cap in zip(self.blocks, self.capacities):
            if sum(p[i] for i in idxs) > cap:
                return False
        return True

    def count(self):
        # convolve per-block choice counts
        ways = [1]
        for idxs, cap in zip(self.blocks, self.capacities):
            k = len(idxs)
            blk = [math.comb(k, s) for s in range(min(cap, k) + 1)]
            nxt = [0] * (len(ways) + len(blk) - 1)
            for a, wa in enumerate(ways):
                if wa:
                    for b, wb in enumerate(blk):
                        nxt[a + b] += wa * wb
            ways = nxt
        return ways[self.m] if self.m < len(ways) else 0

    def _generate(self):
        caps = self.capacities
        block_of = self._block_of

        def rec(i, left, used, p):
            if left == 0:
                yield tuple(p) + (0,) * (self.d - i)
                return
            if self.d - i < left:
                return
            b = block_of[i]
            if used[b] < caps[b]:
                used[b] += 1
                yield from rec(i + 1, left - 1, used, p + [1])
                used[b] -= 1
            yield from rec(i + 1, left, used, p + [0])

        yield from rec(0, self.m, [0] * len(self.blocks), [])

    def canonical_start(self):
        # fill from the right: matroid greedy reaches a basis on any order
        p = [0] * self.d
        used = [0] * len(self.blocks)
        left = self.m
        for i in range(self.d - 1, -1, -1):
            b = self._block_of[i]
            if left and used[b] < self.capacities[b]:
                p[i] = 1
                used[b] += 1
                left -= 1
        return tuple(p)

    def _exchange_neighbors(self, x):
        counts = [0] * len(self.blocks)
        for i in range(self.d):
            if x[i]:
                counts[self._block_of[i]] += 1
        pairs = []
        for i in range(self.d):
            if not x[i]:
                continue
            bi = self._block_of[i]
            for j in range(self.d):
                if x[j] or j == i:
                    continue
                bj = self._block_of[j]
                after = counts[bj] + 1 - (1 if bi == bj else 0)
                if after <= self.capacities[bj]:
                    pairs.append((i, j))
        return sorted(pairs)

    def _argmax_greedy(self, w):
        order = sorted(range(self.d), key=lambda i: (-w[i], i))
        p = [0] * self.d
        used = [0] * len(self.blocks)
        left = self.m
        for i in order:
            if left == 0:
                break
            b = self._block_of[i]
            if used[b] < self.capacities[b]:
                p[i] = 1
                used[b] += 1
                left -= 1
        return tuple(p)

    def descriptor(self):
        return {"family": self.family, "blocks": [list(b) for b in self.blocks],
                "capacities": list(self.capacities), "m": self.m}


class LatticeSimplex(MConvexSet):
    """Integer allocations in {0..D}^d with a fixed coordinate sum m."""

    family = "lattice_simplex"

    def __init__(self, d, cap, m, max_points=DEFAULT_MAX_POINTS):
        super().__init__(d, max_points)
        self.cap = int(cap)
        self.m = int(m)
        if self.cap < 1:
            raise ValueError("per-coordinate cap must be >= 1")
        if not 0 <= self.m <= self.d * self.cap:
            raise ValueError(f"need 0 <= m <= d*cap, got m={m}")

    def _contains(self, p):
        return all(0 <= c <= self.cap for c in p) and sum(p) == self.m

    def count(self):
        # bounded compositions via inclusion-exclusion
        d, cap, m = self.d, self.cap, self.m
        total = 0
        for j in range(m // (cap + 1) + 1):
            r = m - j * (cap + 1)
            if r < 0:
                break
            total += (-1) ** j * math.comb(d, j) * math.comb(r + d - 1, d - 1)
        return total

    def _generate(self):
        def rec(i, left, p):
            if i == self.d - 1:
                if 0 <= left <= self.cap:
                    yield tuple(p) + (left,)
                return
            lo = max(0, left - self.cap * (self.d - 1 - i))
            hi = min(self.cap, left)
            for c in range(lo, hi + 1):
                yield from rec(i + 1, left - c, p + [c])

        yield from rec(0, self.m, [])

    def canonical_start(self):
        p = []
        left = self.m
        for i in range(self.d):
            c = max(0, left - self.cap * (self.d - 1 - i))
            p.append(c)
            left -= c
        return tuple(p)

    def _exchange_neighbors(self, x):
        donors = [i for i in range(self.d) if x[i] >= 1]
        takers = [j for j in range(self.d) if x[j] <= self.cap - 1]
        return sorted((i, j) for i in donors for j in takers if i != j)

    def _argmax_greedy(self, w):
        order = sorted(range(self.d), key=lambda i: (-w[i], i))
        p = [0] * self.d
        left = self.m
        for i in order:
            take = min(self.cap, left)
            p[i] = take
            left -= take
            if left == 0:
                break
        return tuple(p)

    def descriptor(self):
        return {"family": self.family, "d": self.d, "cap": self.cap,
                "m": self.m}


class SegmentEmbed(MConvexSet):
    """Axis-aligned integer segment lifted into one extra dimension.

    The segment -k..+k on coordinate `axis` of Z^base_d is not M-convex on
    its own; adding a balancing coordinate (the final one) that mirrors the
    segment value restores the constant-sum exchange structure.  Ambient
    dimension is base_d + 1.
    """

    family = "segment_embed"

    def __init__(self, base_d, k, axis, max_points=DEFAULT_MAX_POINTS):
        super().__init__(int(base_d) + 1, max_points)
        self.base_d = int(base_d)
        self.k = int(k)
        self.axis = int(axis)
        if self.k < 1:
            raise ValueError("segment half-length k must be >= 1")
        if not 0 <= self.axis < self.base_d:
            raise ValueError(f"axis {axis} out of range for base_d={base_d}")

    def _point_for(self, v):
        p = [0] * self.d
        p[self.axis] = v
        p[-1] = -v
        return tuple(p)

    def _contains(self, p):
        v = p[self.axis]
        return -self.k <= v <= self.k and p == self._point_for(v)

    def count(self):
        return 2 * self.k + 1

    def _generate(self):
        for v in range(-self.k, self.k + 1):
            yield self._point_for(v)

    def canonical_start(self):
        return self._point_for(-self.k)

    def _exchange_neighbors(self, x):
        v = x[self.axis]
        last = self.d - 1
        pairs = []
        if v > -self.k:
            pairs.append((self.axis, last))
        if v < self.k:
            pairs.append((last, self.axis))
        return sorted(pairs)

    def _argmax_greedy(self, w):
        gain = w[self.axis] - w[-1]
        if gain > 0:
            return self._point_for(self.k)
        if gain < 0:
            return self._point_for(-self.k)
        return self._point_for(-self.k)  # tied: canonical endpoint

    def descriptor(self):
        return {"family": self.family, "base_d": self.base_d, "k": self.k,
                "axis": self.axis}


class ExplicitSet(MConvexSet):
    """User-supplied point list, validated for M-convexity at construction."""

    family = "explicit"

    def __init__(self, points, max_points=DEFAULT_MAX_POINTS):
        pts = sorted({as_point(p) for p in points})
        if not pts:
            raise ValueError("explicit set must be non-empty")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise DimensionMismatch("all points must share one dimension")
        super().__init__(d, max_points)
        self.points = pts
        self._lookup = set(pts)
        if not self.verify_m_convexity():
            raise ValueError("point list violates the M-convex exchange "
                             "property; refusing to construct")

    def _contains(self, p):
        return p in self._lookup

    def count(self):
        return len(self.points)

    def _generate(self):
        return iter(self.points)

    def canonical_start(self):
        return self.points[0]

    def descriptor(self):
        return {"family": self.family, "points": [list(p) for p in self.points]}


_FAMILIES = {
    "uniform_matroid": lambda s, **kw: UniformMatroid(s["d"], s["m"], **kw),
    "graphic_matroid": lambda s, **kw: GraphicMatroid(s["n"], s["edges"], **kw),
    "partition_matroid": lambda s, **kw: PartitionMatroid(
        s["blocks"], s["capacities"], s["m"], **kw),
    "lattice_simplex": lambda s, **kw: LatticeSimplex(
        s["d"], s["cap"], s["m"], **kw),
    "segment_embed": lambda s, **kw: SegmentEmbed(
        s["base_d"], s["k"], s["axis"], **kw),
    "explicit": lambda s, **kw: ExplicitSet(s["points"], **kw),
}


def set_from_descriptor(desc, max_points=DEFAULT_MAX_POINTS):
    """Rebuild a set handle from its descriptor dict."""
    try:
        build = _FAMILIES[desc["family"]]
    except KeyError:
        raise ValueError(f"unknown family {desc.get('family')!r}") from None
    return build(desc, max_points=max_points)
