"""Agent simulation: optimal actions plus pluggable corruption strategies.

The agent always plays a feasible point.  Uncorrupted rounds play the
unique maximizer of the hidden objective; corrupted rounds play a feasible
but strictly suboptimal point chosen by the strategy.  A corruption
requested on a round with no suboptimal point (singleton set) is skipped
and logged, keeping the realized corruption count honest.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .. import linopt
from ..orderstate import ArcSet

log = logging.getLogger(__name__)

MIN_COMPONENT_GAP = 1e-6


@dataclass(frozen=True)
class AgentSpec:
    """Hidden objective with pairwise-distinct, finite components."""

    w_star: tuple

    def __post_init__(self):
        w = tuple(float(v) for v in self.w_star)
        if any(not math.isfinite(v) for v in w):
            raise ValueError("w_star must be finite")
        if len(set(w)) != len(w):
            raise ValueError("w_star components must be pairwise distinct")
        object.__setattr__(self, "w_star", w)

    @property
    def d(self):
        return len(self.w_star)


def make_w_star(d, rng, scale=1.0):
    """Uniform draw from (0,1)^d, resampled until components are separated
    by at least MIN_COMPONENT_GAP, then divided by scale * sum(w)."""
    while True:
        w = [rng.random() for _ in range(d)]
        sw = sorted(w)
        if all(b - a >= MIN_COMPONENT_GAP for a, b in zip(sw, sw[1:])):
            break
    total = sum(w) * scale
    return AgentSpec(tuple(v / total for v in w))


@dataclass
class CorruptionPlan:
    """Which rounds get corrupted and what the corrupted action is.

    kinds: none                 never corrupt
           fixed_rounds         corrupt exactly the listed rounds (second
                                best point), skipping infeasible ones
           random_rounds        c rounds drawn uniformly without
                                replacement from 1..T
           second_best          first c eligible rounds, second-best point
           cycle_hiding         first c eligible rounds, suboptimal point
                                greedily chosen to avoid closing a cycle
    """

    kind: str = "none"
    c: int = 0
    rounds: list = field(default_factory=list)
    realized: int = 0
    skipped: int = 0
    corrupted_rounds: list = field(default_factory=list)
    _scheduled: frozenset = field(default_factory=frozenset)

    def bind(self, horizon, rng):
        if self.kind == "fixed_rounds":
            self._scheduled = frozenset(self.rounds)
        elif self.kind == "random_rounds":
            take = min(self.c, horizon)
            self._scheduled = frozenset(rng.sample(range(1, horizon + 1), take))
        return self

    def wants(self, t):
        if self.kind == "none":
            return False
        if self.kind in ("fixed_rounds", "random_rounds"):
            return t in self._scheduled
        return self.realized < self.c

    def skip(self, t, reason):
        self.skipped += 1
        log.info("corruption skipped at round %d: %s", t, reason)


def build_plan(corruption_cfg) -> CorruptionPlan:
    kind = corruption_cfg.get("kind", "none")
    return CorruptionPlan(kind=kind, c=corruption_cfg.get("c", 0),
                          rounds=list(corruption_cfg.get("rounds", [])))


def _suboptimal_candidates(feasible, w):
    """(optimal point, list of strictly suboptimal points with values)."""
    pts = feasible.enumerate_points()
    vals = np.array(pts, dtype=float) @ np.array(w)
    best = vals.max()
    opt = pts[int(np.argmax(vals))]
    subs = [(pts[k], float(vals[k])) for k in range(len(pts))
            if vals[k] < best]
    return opt, subs


def _second_best(subs):
    top = max(v for _, v in subs)
    return min(p for p, v in subs if v == top)


def _cycle_hiding(subs, feasible, arcs):
    """Prefer high-value suboptimal points whose arcs keep the graph acyclic."""
    ranked = sorted(subs, key=lambda pv: (-pv[1], pv[0]))
    if arcs is None:
        return ranked[0][0]
    for p, _ in ranked:
        pairs = feasible.exchange_neighbors(p)
        probe = ArcSet(arcs.d)
        probe.add_arcs(arcs.arcs())
        probe.add_arcs(pairs)
        if not probe.has_cycle():
            return p
    return ranked[0][0]


def agent_act_detail(agent, feasible, plan, t, arcs=None):
    """(action, corrupted flag, optimal point) for round t."""
    opt = linopt.argmax(feasible, agent.w_star)
    if not plan.wants(t):
        return opt, False, opt
    if feasible.count() == 1:
        plan.skip(t, "feasible set is a singleton")
        return opt, False, opt
    _, subs = _suboptimal_candidates(feasible, agent.w_star)
    if not subs:
        plan.skip(t, "no strictly suboptimal point exists")
        return opt, False, opt
    if plan.kind == "cycle_hiding":
        action = _cycle_hiding(subs, feasible, arcs)
    else:
        action = _second_best(subs)
    plan.realized += 1
    plan.corrupted_rounds.append(t)
    return action, True, opt


def agent_act(agent, feasible, plan, t, arcs=None):
    """The agent's action at round t (optimal unless the plan corrupts)."""
    action, _, _ = agent_act_detail(agent, feasible, plan, t, arcs=arcs)
    return action
