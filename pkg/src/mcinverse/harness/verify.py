"""Post-hoc trace audit against brute-force oracles.

Replays every round of a trace with exact rational arithmetic:
  - the recommended point must be the unique exact maximizer of the
    recorded estimate over the round's feasible set;
  - rounds claimed uncorrupted must play an exact optimum of w*, rounds
    claimed corrupted must not;
  - arc additions must equal the observed action's exchange pairs;
  - gap and cumulative-regret arithmetic must reproduce;
  - exact volume fractions must match recomputed extension counts, and
    mistake rounds of centroid-weight runs must shrink the volume by at
    least the centroid cut factor (restart rounds reset instead);
  - footer counters must match the replay.

Integrity violations are distinct from optimality flags: a round recorded
as corrupted is flagged (it is suboptimal by design) without counting as a
trace violation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..geometry import count_linear_extensions
from ..mconvex import set_from_descriptor
from ..orderstate import ArcSet

GAP_TOLERANCE = 1e-9
_SHRINK_EPS = 1e-12


class TraceError(RuntimeError):
    """Trace file unreadable or structurally malformed."""


@dataclass
class VerifyReport:
    rounds: int = 0
    violations: list = field(default_factory=list)   # (round, code, message)
    optimality_flags: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, t, code, message):
        self.violations.append((t, code, message))

    def render(self):
        lines = [f"rounds checked: {self.rounds}",
                 f"suboptimal agent actions at rounds: "
                 f"{self.optimality_flags or 'none'}"]
        if self.ok:
            lines.append("violations: none")
        else:
            lines.append(f"violations: {len(self.violations)}")
            for t, code, message in self.violations:
                lines.append(f"  round {t}: [{code}] {message}")
        return "\n".join(lines)


def _exact_dot(w, p):
    return sum(Fraction(wi) * int(pi) for wi, pi in zip(w, p))


def _exact_argmax(points, w):
    best = None
    arg = []
    for p in points:
        v = _exact_dot(w, p)
        if best is None or v > best:
            best, arg = v, [p]
        elif v == best:
            arg.append(p)
    return best, arg


def _shrink_ok(prev_count, count):
    # exact rational ratio against the irrational cut constant
    ratio = count / prev_count
    return ratio <= (1.0 - 1.0 / math.e) + _SHRINK_EPS


def read_trace(path):
    header, rounds, footer = None, [], None
    abort = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                kind = rec.get("type")
                if kind == "header":
                    header = rec
                elif kind == "round":
                    rounds.append(rec)
                elif kind == "abort":
                    abort = rec
                elif kind == "footer":
                    footer = rec
                else:
                    raise TraceError(f"unknown record type {kind!r}")
    except (OSError, json.JSONDecodeError) as exc:
        raise TraceError(f"cannot read trace {path}: {exc}") from exc
    if header is None or footer is None:
        raise TraceError("trace must contain a header and a footer record")
    if abort is not None and footer.get("aborted") != abort.get("reason"):
        raise TraceError("abort record disagrees with the footer")
    return header, rounds, footer


def verify_trace(path):
    header, rounds, footer = read_trace(path)
    report = VerifyReport()
    cfg = header["config"]
    d = cfg["d"]
    w_star = header["w_star"]
    variant = cfg["learner"]["variant"]
    centroid_weights = variant == "centroid" or (
        variant == "robust"
        and cfg["learner"].get("weight_mode", "centroid") == "centroid")
    exact_geometry = header.get("exact_geometry", False)

    arcs = ArcSet(d)
    d_fact = math.factorial(d)
    prev_count = d_fact
    cum = 0.0
    mistakes = 0
    restarts = 0
    realized = 0
    segment_mistakes = [0]

    for rec in rounds:
        report.rounds += 1
        t = rec["t"]
        feasible = set_from_descriptor(rec["set"])
        x = tuple(rec["x"])
        xhat = tuple(rec["xhat"])
        what = rec["what"]
        points = feasible.enumerate_points()

        if not feasible.contains(x):
            report.add(t, "x_not_in_set", f"agent action {x} infeasible")
            continue

        _, arg_hat = _exact_argmax(points, what)
        if len(arg_hat) != 1:
            report.add(t, "xhat_ambiguous",
                       f"estimate admits {len(arg_hat)} maximizers")
        elif xhat != arg_hat[0]:
            report.add(t, "xhat_not_argmax",
                       f"recorded {xhat}, exact argmax {arg_hat[0]}")

        best_star, arg_star = _exact_argmax(points, w_star)
        suboptimal = x not in arg_star
        if suboptimal:
            report.optimality_flags.append(t)
        if suboptimal != bool(rec["corrupted"]):
            code = ("claimed_optimal_but_suboptimal" if suboptimal
                    else "claimed_corrupted_but_optimal")
            report.add(t, code, f"corrupted flag {rec['corrupted']} is wrong")
        if suboptimal:
            realized += 1

        exact_gap = _exact_dot(w_star, x) - _exact_dot(w_star, xhat)
        if abs(float(exact_gap) - rec["gap"]) > GAP_TOLERANCE:
            report.add(t, "gap_mismatch",
                       f"recorded gap {rec['gap']}, exact {float(exact_gap)}")
        # local consistency so a single tampered value flags locally
        if rec["cum_regret"] != cum + rec["gap"]:
            report.add(t, "cum_regret_mismatch",
                       f"recorded {rec['cum_regret']}, expected "
                       f"{cum + rec['gap']}")
        cum = rec["cum_regret"]

        expected_new = [p for p in feasible.exchange_neighbors(x)
                        if p not in arcs]
        got_new = [tuple(a) for a in rec["new_arcs"]]
        if sorted(expected_new) != sorted(got_new):
            report.add(t, "arc_mismatch",
                       f"expected new arcs {sorted(expected_new)}, "
                       f"recorded {sorted(got_new)}")
        arcs.add_arcs(expected_new)

        cycle = arcs.has_cycle()
        should_restart = variant == "robust" and cycle
        if bool(rec["restarted"]) != should_restart:
            report.add(t, "restart_mismatch",
                       f"restarted={rec['restarted']} but cycle={cycle} "
                       f"under variant {variant}")

        mistake = x != xhat
        if mistake != bool(rec["mistake"]):
            report.add(t, "mistake_flag_mismatch",
                       f"recorded {rec['mistake']}, replay {mistake}")
        if mistake:
            mistakes += 1
            segment_mistakes[-1] += 1

        if exact_geometry:
            if should_restart:
                count = d_fact
            else:
                count = count_linear_extensions(d, arcs.arcs())
            vol = rec.get("volume")
            if vol != f"{count}/{d_fact}":
                report.add(t, "volume_mismatch",
                           f"recorded {vol}, replay {count}/{d_fact}")
            if mistake and centroid_weights and not should_restart:
                if not _shrink_ok(prev_count, count):
                    report.add(t, "shrink_violation",
                               f"volume ratio {count}/{prev_count} exceeds "
                               f"the centroid cut factor")
            prev_count = count

        if should_restart:
            arcs.restart()
            restarts += 1
            segment_mistakes.append(0)

    checks = [
        ("mistakes", mistakes), ("restarts", restarts),
        ("realized_C", realized), ("rounds", report.rounds),
        ("segment_mistakes", segment_mistakes),
    ]
    for key, value in checks:
        if footer.get(key) != value:
            report.add(0, f"footer_{key}_mismatch",
                       f"footer {key}={footer.get(key)}, replay {value}")
    if footer.get("R_T") != cum and report.rounds:
        report.add(0, "footer_R_T_mismatch",
                   f"footer R_T={footer.get('R_T')}, replay {cum}")
    return report
