"""Feasible-set sequence generators.

Each generator yields one MConvexSet per round, deterministically from the
config seed.  `gap_scale` reports a family-wide bound B such that after the
agent's weights are divided by B * sum(w), any single round's best-vs-worst
objective gap stays at most 1.

Kinds:
    fixed          one descriptor, repeated every round
    random_matroid fresh random uniform / partition / graphic matroid each
                   round, all in the configured dimension
    random_mconvex same plus capped integer-allocation instances
    two_action_script  alternating scripted two-action d=3 sets (period 4)
    segment_cycle  integer segments of half-length k = max(1, floor(sqrt(
                   base_d)/4)) on a cycling axis, lifted into base_d + 1
"""

from __future__ import annotations

import math
import random

from ..mconvex import (ExplicitSet, GraphicMatroid, LatticeSimplex,
                       PartitionMatroid, SegmentEmbed, UniformMatroid,
                       set_from_descriptor)
from .config import ConfigError


class _BaseSequence:
    def __init__(self, cfg):
        self.cfg = cfg
        self.d = cfg.d

    def gap_scale(self):
        return 1.0

    def __iter__(self):
        raise NotImplementedError


class FixedSequence(_BaseSequence):
    def __init__(self, cfg):
        super().__init__(cfg)
        desc = cfg.family.get("set")
        if not isinstance(desc, dict):
            raise ConfigError("family.kind 'fixed' requires a 'set' descriptor")
        self.instance = set_from_descriptor(desc, max_points=cfg.max_points)
        if self.instance.d != cfg.d:
            raise ConfigError(
                f"fixed set has dimension {self.instance.d}, config d={cfg.d}")

    def gap_scale(self):
        fam = self.instance.family
        if fam == "lattice_simplex":
            return float(self.instance.cap)
        if fam == "segment_embed":
            return float(2 * self.instance.k)
        if fam == "explicit":
            pts = self.instance.points
            return float(max(
                max(p[i] for p in pts) - min(p[i] for p in pts)
                for i in range(self.instance.d)) or 1)
        return 1.0

    def __iter__(self):
        while True:
            yield self.instance


class RandomMatroidSequence(_BaseSequence):
    """Per-round random matroid instances; 0/1 points only."""

    kinds = ("uniform", "partition", "graphic")

    def __init__(self, cfg):
        super().__init__(cfg)
        if cfg.d < 2:
            raise ConfigError("random matroid streams need d >= 2")
        self.rng = random.Random(f"{cfg.seed}/sequence")

    def _uniform(self):
        m = self.rng.randint(1, self.d - 1)
        return UniformMatroid(self.d, m, max_points=self.cfg.max_points)

    def _partition(self):
        idx = list(range(self.d))
        self.rng.shuffle(idx)
        n_blocks = self.rng.randint(1, min(3, self.d))
        cuts = sorted(self.rng.sample(range(1, self.d), n_blocks - 1))
        blocks, prev = [], 0
        for c in cuts + [self.d]:
            blocks.append(sorted(idx[prev:c]))
            prev = c
        caps = [self.rng.randint(1, len(b)) for b in blocks]
        rank = sum(min(c, len(b)) for b, c in zip(blocks, caps))
        m = self.rng.randint(1, rank)
        return PartitionMatroid(blocks, caps, m, max_points=self.cfg.max_points)

    def _graphic(self):
        d = self.d
        n_min = 2
        while n_min * (n_min - 1) // 2 < d:
            n_min += 1
        n = self.rng.randint(n_min, d + 1)
        edges = []
        for v in range(1, n):
            edges.append((self.rng.randint(0, v - 1), v))
        have = {tuple(sorted(e)) for e in edges}
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if (u, v) not in have]
        extra = d - (n - 1)
        edges.extend(self.rng.sample(all_pairs, extra))
        self.rng.shuffle(edges)
        return GraphicMatroid(n, edges, max_points=self.cfg.max_points)

    def _draw(self):
        kind = self.rng.choice(self.kinds)
        if kind == "uniform":
            return self._uniform()
        if kind == "partition":
            return self._partition()
        return self._graphic()

    def __iter__(self):
        while True:
            yield self._draw()


class RandomMConvexSequence(RandomMatroidSequence):
    """Matroid stream plus capped integer allocations."""

    kinds = ("uniform", "partition", "graphic", "lattice")
    max_cap = 3

    def _lattice(self):
        cap = self.rng.randint(1, self.max_cap)
        m = self.rng.randint(1, self.d * cap - 1)
        return LatticeSimplex(self.d, cap, m, max_points=self.cfg.max_points)

    def _draw(self):
        kind = self.rng.choice(self.kinds)
        if kind == "lattice":
            return self._lattice()
        if kind == "uniform":
            return self._uniform()
        if kind == "partition":
            return self._partition()
        return self._graphic()

    def gap_scale(self):
        return float(self.max_cap)


class TwoActionScriptSequence(_BaseSequence):
    """Scripted two-action sequence: {e0,e1}, {e1,e2}, repeated."""

    def __init__(self, cfg):
        super().__init__(cfg)
        if cfg.d != 3:
            raise ConfigError("two_action_script sequence requires d = 3")
        e = [tuple(1 if k == i else 0 for k in range(3)) for i in range(3)]
        self.script = [
            ExplicitSet([e[0], e[1]]),
            ExplicitSet([e[1], e[2]]),
            ExplicitSet([e[0], e[1]]),
            ExplicitSet([e[1], e[2]]),
        ]

    def __iter__(self):
        t = 0
        while True:
            yield self.script[t % 4]
            t += 1


class SegmentCycleSequence(_BaseSequence):
    """Lower-bound family: one integer segment per round, cycling axes."""

    def __init__(self, cfg):
        super().__init__(cfg)
        base_d = cfg.family.get("base_d", cfg.d - 1)
        if base_d + 1 != cfg.d:
            raise ConfigError(
                f"segment_cycle with base_d={base_d} needs config d="
                f"{base_d + 1} (one balancing coordinate)")
        if base_d < 1:
            raise ConfigError("segment_cycle needs base_d >= 1")
        self.base_d = base_d
        self.k = max(1, math.isqrt(base_d) // 4)

    def gap_scale(self):
        return float(2 * self.k)

    def __iter__(self):
        axis = 0
        while True:
            yield SegmentEmbed(self.base_d, self.k, axis,
                               max_points=self.cfg.max_points)
            axis = (axis + 1) % self.base_d


_SEQUENCES = {
    "fixed": FixedSequence,
    "random_matroid": RandomMatroidSequence,
    "random_mconvex": RandomMConvexSequence,
    "two_action_script": TwoActionScriptSequence,
    "segment_cycle": SegmentCycleSequence,
}


def build_sequence(cfg):
    kind = cfg.family["kind"]
    try:
        builder = _SEQUENCES[kind]
    except KeyError:
        raise ConfigError(f"unknown family kind {kind!r}") from None
    return builder(cfg)
