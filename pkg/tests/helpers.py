"""Shared test utilities: random instances and independent oracles.

The oracles here deliberately re-derive everything from first principles
(membership scans, permutation filtering, exact rational dots) so they
stay independent of the library's optimized code paths.
"""

import random
from fractions import Fraction
from itertools import permutations

from mcinverse import (ExplicitSet, GraphicMatroid, LatticeSimplex,
                       PartitionMatroid, UniformMatroid)
from mcinverse.mconvex import move


def random_instance(rng, d=None, d_max=6, families=("uniform", "partition",
                                                    "graphic", "lattice")):
    """One random enumerable instance; dimensions kept small."""
    if d is None:
        d = rng.randint(2, d_max)
    kind = rng.choice(families)
    if kind == "uniform":
        return UniformMatroid(d, rng.randint(1, d - 1))
    if kind == "partition":
        idx = list(range(d))
        rng.shuffle(idx)
        n_blocks = rng.randint(1, min(3, d))
        cuts = sorted(rng.sample(range(1, d), n_blocks - 1))
        blocks, prev = [], 0
        for c in cuts + [d]:
            blocks.append(sorted(idx[prev:c]))
            prev = c
        caps = [rng.randint(1, len(b)) for b in blocks]
        rank = sum(min(c, len(b)) for b, c in zip(blocks, caps))
        return PartitionMatroid(blocks, caps, rng.randint(1, rank))
    if kind == "graphic":
        n_min = 2
        while n_min * (n_min - 1) // 2 < d:
            n_min += 1
        n = rng.randint(n_min, d + 1)
        edges = [(rng.randint(0, v - 1), v) for v in range(1, n)]
        have = {tuple(sorted(e)) for e in edges}
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)
                if (u, v) not in have]
        edges.extend(rng.sample(pool, d - (n - 1)))
        rng.shuffle(edges)
        return GraphicMatroid(n, edges)
    cap = rng.randint(1, 3)
    return LatticeSimplex(d, cap, rng.randint(1, d * cap - 1))


def distinct_weights(rng, d, lo=0.0, hi=1.0):
    while True:
        w = [rng.uniform(lo, hi) for _ in range(d)]
        if len(set(w)) == d:
            return tuple(w)


def oracle_exchange_pairs(mset, x):
    """Exchange pairs recomputed from bare membership calls."""
    d = mset.d
    return sorted((i, j) for i in range(d) for j in range(d)
                  if i != j and mset.contains(move(x, i, j)))


def oracle_argmax_set(mset, w):
    """All exact-rational maximizers over the enumerated point list."""
    pts = mset.enumerate_points()
    best, arg = None, []
    for p in pts:
        v = sum(Fraction(wi) * pi for wi, pi in zip(w, p))
        if best is None or v > best:
            best, arg = v, [p]
        elif v == best:
            arg.append(p)
    return arg


def oracle_extensions(d, arcs):
    """Linear extensions by brute permutation filtering."""
    arcs = list(arcs)
    out = []
    for perm in permutations(range(d)):
        pos = {v: k for k, v in enumerate(perm)}
        if all(pos[i] < pos[j] for i, j in arcs):
            out.append(perm)
    return out


def oracle_centroid(d, arcs):
    """Exact centroid from the brute-force extension list."""
    exts = oracle_extensions(d, arcs)
    total = len(exts)
    cent = []
    for i in range(d):
        s = sum(d - perm.index(i) for perm in exts)  # d+1-(pos+1)
        cent.append(Fraction(s, total * (d + 1)))
    return tuple(cent)


def random_dag_arcs(rng, d, density=0.4):
    """Random acyclic arc set: pairs oriented along a hidden permutation."""
    perm = list(range(d))
    rng.shuffle(perm)
    pos = {v: k for k, v in enumerate(perm)}
    arcs = []
    for i in range(d):
        for j in range(d):
            if i != j and pos[i] < pos[j] and rng.random() < density:
                arcs.append((i, j))
    return arcs


def tiny_explicit(points):
    return ExplicitSet(points)
