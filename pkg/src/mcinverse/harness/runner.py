"""End-to-end experiment driver.

Runs the round protocol (propose, agent acts, observe), keeps the regret
ledger, and optionally writes a line-delimited trace: one header record,
one record per round, one summary footer.  Identical config + seed yields
a byte-identical trace.
"""

from __future__ import annotations

import json
import math
import random

from .. import linopt
from ..geometry import count_linear_extensions
from ..learner import RoundRecord, make_learner
from .agent import agent_act_detail, build_plan, make_w_star, AgentSpec
from .ledger import RegretLedger
from .sequence import build_sequence

TRACE_SCHEMA = 1


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def build_agent(cfg, gap_scale):
    spec = cfg.agent.get("w_star", "random")
    if spec == "random":
        rng = random.Random(f"{cfg.seed}/agent")
        return make_w_star(cfg.d, rng, scale=gap_scale)
    return AgentSpec(tuple(float(v) for v in spec))


def run_experiment(cfg, trace_path=None, exact_geometry=True,
                   keep_records=True):
    """Execute cfg.t rounds; returns the RegretLedger.

    trace_path: write the JSONL trace there when given.
    exact_geometry: exact centroids and volume tracking while d stays
        within the learner's exact bound; otherwise the centroid falls
        back to sampling and volumes are omitted.
    """
    sequence = build_sequence(cfg)
    agent = build_agent(cfg, sequence.gap_scale())
    plan = build_plan(cfg.corruption)
    plan.bind(cfg.t, random.Random(f"{cfg.seed}/corruption"))
    variant = cfg.learner["variant"]
    exact_bound = cfg.learner["exact_bound"]
    learner = make_learner(
        variant, cfg.d, exact_bound=exact_bound, seed=cfg.seed,
        exact=exact_geometry, weight_mode=cfg.learner["weight_mode"])

    track_volume = exact_geometry and cfg.d <= exact_bound
    d_fact = math.factorial(cfg.d)
    ext_count = d_fact  # empty arc set spans the whole cube

    ledger = RegretLedger(cfg.d)
    writer = open(trace_path, "w", encoding="utf-8", newline="\n") \
        if trace_path else None
    try:
        if writer:
            writer.write(_dump({
                "type": "header", "schema": TRACE_SCHEMA,
                "config": cfg.to_dict(), "w_star": list(agent.w_star),
                "gap_scale": sequence.gap_scale(),
                "exact_geometry": bool(track_volume),
            }))

        stream = iter(sequence)
        for t in range(1, cfg.t + 1):
            feasible = next(stream)
            what, xhat = learner.propose(feasible)
            action, corrupted, opt = agent_act_detail(
                agent, feasible, plan, t, arcs=learner.arcs)
            outcome = learner.observe(feasible, action)

            prev_count = ext_count
            if track_volume:
                if outcome.restarted:
                    ext_count = d_fact
                elif outcome.new_arcs:
                    ext_count = count_linear_extensions(
                        cfg.d, learner.arcs.arcs())
            aborted = None
            if outcome.new_arcs and not outcome.restarted \
                    and variant != "robust" and learner.arcs.has_cycle():
                # contradictory constraints: no consistent estimate exists
                # for a non-restarting variant, so the run cannot continue
                ledger.cycle_detections += 1
                aborted = ("cycle in the arc state under the "
                           f"non-robust variant {variant!r}; feedback was "
                           "corrupted and this variant cannot restart")

            w = agent.w_star
            gap = linopt.dot(w, action) - linopt.dot(w, xhat)
            v_opt = linopt.dot(w, opt)
            gap_star = v_opt - linopt.dot(w, xhat)
            worst = linopt.argmax(feasible, tuple(-v for v in w))
            round_range = v_opt - linopt.dot(w, worst)

            record = RoundRecord(
                t=t, x=tuple(action), xhat=xhat, what=what, gap=gap,
                new_arcs=outcome.new_arcs, restarted=outcome.restarted,
                mistake=outcome.mistake,
                descriptor=feasible.descriptor(), corrupted=corrupted,
                volume=f"{ext_count}/{d_fact}" if track_volume else None)
            ledger.add_round(
                record, gap_star, round_range, keep_record=keep_records,
                shrink=(prev_count, ext_count) if track_volume else None)
            if writer:
                writer.write(_dump({
                    "type": "round", "t": t,
                    "set": record.descriptor,
                    "x": list(record.x), "xhat": list(record.xhat),
                    "what": list(record.what), "gap": record.gap,
                    "new_arcs": [list(a) for a in record.new_arcs],
                    "new_arc_count": len(record.new_arcs),
                    "cum_regret": record.cum_regret,
                    "restarted": record.restarted,
                    "corrupted": record.corrupted,
                    "mistake": record.mistake,
                    "volume": record.volume,
                }))
            if aborted:
                ledger.aborted = aborted
                if writer:
                    writer.write(_dump({"type": "abort", "t": t,
                                        "reason": aborted}))
                break

        ledger.skipped_corruptions = plan.skipped
        if writer:
            writer.write(_dump({"type": "footer", **ledger.summary()}))
    finally:
        if writer:
            writer.close()
    return ledger


def volume_log_float(volume_str):
    """Natural log of an exact 'L/d!' volume string."""
    num, den = volume_str.split("/")
    return math.log(int(num)) - math.log(int(den))
