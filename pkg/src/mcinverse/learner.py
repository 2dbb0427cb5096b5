"""Round-based learners that infer a hidden linear objective from actions.

All variants keep an arc state A of index pairs (i, j) forced to satisfy
w[i] > w[j] by the feedback seen so far, propose a consistent estimate,
recommend the estimate's maximizer, then fold the observed action's
exchange neighborhood back into A:

  TopoLearner      assigns weights from a deterministic topological order.
  CentroidLearner  uses the tie-broken centroid of the order polytope.
  RobustLearner    is the centroid variant plus a restart that wipes A
                   whenever a directed cycle proves corrupted feedback.

Learners never see the agent's true objective; `run_round` optionally
receives it purely for gap bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linopt
from .geometry import EXACT_MODE_BOUND, OrderPolytope
from .mconvex import NotInSet
from .orderstate import ArcSet


class ProtocolViolation(ValueError):
    """Observed action was outside the round's feasible set."""


@dataclass
class RoundOutcome:
    new_arcs: list
    restarted: bool
    mistake: bool


@dataclass
class RoundRecord:
    """One round's full bookkeeping (serialized into the trace)."""

    t: int
    x: tuple
    xhat: tuple
    what: tuple
    gap: float | None
    new_arcs: list
    restarted: bool
    mistake: bool
    descriptor: dict | None = None
    corrupted: bool = False
    cum_regret: float | None = None
    volume: str | None = None


class _Learner:
    variant = "abstract"

    def __init__(self, d, exact_bound=EXACT_MODE_BOUND, seed=0):
        self.d = int(d)
        self.arcs = ArcSet(d)
        self.mistakes = 0
        self.exact_bound = int(exact_bound)
        self.seed = seed
        self._cached_weights = None
        self._cached_version = -1
        self._pending_xhat = None

    @property
    def segment(self):
        return self.arcs.segment

    def _compute_weights(self):
        raise NotImplementedError

    def weights(self):
        """Current estimate; distinct components, consistent with the arcs.

        Depends only on the observation history (never on the round's
        feasible set), so it is cached until the arc state changes.
        """
        if self._cached_version != self.arcs.version:
            self._cached_weights = self._compute_weights()
            self._cached_version = self.arcs.version
        return self._cached_weights

    def propose(self, feasible):
        """Estimate plus its unique maximizer over `feasible`."""
        what = self.weights()
        xhat = linopt.argmax(feasible, what)
        self._pending_xhat = xhat
        return what, xhat

    def observe(self, feasible, action):
        """Fold the observed action's exchange pairs into the arc state."""
        if self._pending_xhat is None:
            raise RuntimeError("observe() requires a propose() first")
        try:
            pairs = feasible.exchange_neighbors(action)
        except NotInSet:
            raise ProtocolViolation(
                f"agent action {action} is not in the feasible set "
                f"{feasible.describe()}") from None
        new = self.arcs.add_arcs(pairs)
        restarted = self._after_update(bool(new))
        mistake = tuple(action) != self._pending_xhat
        if mistake:
            self.mistakes += 1
        self._pending_xhat = None
        return RoundOutcome(new_arcs=new, restarted=restarted, mistake=mistake)

    def _after_update(self, changed):
        return False

    def run_round(self, feasible, action, w_star=None):
        """propose + observe; gap bookkeeping only when w_star is given."""
        what, xhat = self.propose(feasible)
        outcome = self.observe(feasible, action)
        gap = None
        if w_star is not None:
            gap = linopt.dot(w_star, action) - linopt.dot(w_star, xhat)
        return RoundRecord(
            t=0, x=tuple(action), xhat=xhat, what=what, gap=gap,
            new_arcs=outcome.new_arcs, restarted=outcome.restarted,
            mistake=outcome.mistake)


class TopoLearner(_Learner):
    """Weights straight from the deterministic topological order."""

    variant = "topo"

    def _compute_weights(self):
        return self.arcs.topological_weights()


class CentroidLearner(_Learner):
    """Weights from the order polytope's tie-broken center of gravity.

    Exact while d stays within the exact-mode bound; beyond it (or with
    exact mode disabled) a seeded hit-and-run estimate is used, which
    carries no certified mistake bound.
    """

    variant = "centroid"

    def __init__(self, d, exact_bound=EXACT_MODE_BOUND, seed=0, exact=True):
        super().__init__(d, exact_bound=exact_bound, seed=seed)
        self.exact = bool(exact) and d <= exact_bound

    def _compute_weights(self):
        poly = OrderPolytope(self.d, self.arcs.arcs(),
                             exact_bound=self.exact_bound)
        if self.exact:
            return poly.tie_broken_centroid()
        est = poly.approx_centroid((self.seed, self.arcs.version))
        return _separate_ties(est, self.arcs)


class RobustLearner(CentroidLearner):
    """Centroid learner with cycle-triggered restarts.

    A directed cycle in the arc state certifies that some observed action
    in the current segment was corrupted; the state is cleared in full.
    `weight_mode="topo"` switches to topological weights (experimental,
    weaker per-segment guarantee).
    """

    variant = "robust"

    def __init__(self, d, exact_bound=EXACT_MODE_BOUND, seed=0, exact=True,
                 weight_mode="centroid"):
        super().__init__(d, exact_bound=exact_bound, seed=seed, exact=exact)
        if weight_mode not in ("centroid", "topo"):
            raise ValueError(f"unknown weight_mode {weight_mode!r}")
        self.weight_mode = weight_mode

    def _compute_weights(self):
        if self.weight_mode == "topo":
            return self.arcs.topological_weights()
        return super()._compute_weights()

    def _after_update(self, changed):
        if changed and self.arcs.has_cycle():
            self.arcs.restart()
            return True
        return False


def _separate_ties(values, arcs):
    """Nudge tied float coordinates apart along the topological rank."""
    vals = list(float(v) for v in values)
    groups = {}
    for i, v in enumerate(vals):
        groups.setdefault(v, []).append(i)
    if all(len(g) == 1 for g in groups.values()):
        return tuple(vals)
    rank = {v: k for k, v in enumerate(arcs.topological_order())}
    eps = 1e-9
    for members in groups.values():
        members = sorted(members, key=lambda v: rank[v])
        n = len(members)
        for pos, v in enumerate(members):
            vals[v] += (n - 1 - pos) * eps
    return tuple(vals)


def make_learner(variant, d, exact_bound=EXACT_MODE_BOUND, seed=0, exact=True,
                 weight_mode="centroid"):
    if variant == "topo":
        return TopoLearner(d, exact_bound=exact_bound, seed=seed)
    if variant == "centroid":
        return CentroidLearner(d, exact_bound=exact_bound, seed=seed,
                               exact=exact)
    if variant == "robust":
        return RobustLearner(d, exact_bound=exact_bound, seed=seed,
                             exact=exact, weight_mode=weight_mode)
    raise ValueError(f"unknown learner variant {variant!r}")
