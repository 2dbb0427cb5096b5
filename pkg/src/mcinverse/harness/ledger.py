"""Regret accounting across a run.

R_T sums the per-round gaps <w*, x_t - xhat_t>; R*_T measures against the
uncorrupted optimal actions instead.  Mistake and restart counters are kept
per segment (a segment ends at each restart, inclusive of the restarting
round) so per-segment bounds can be checked directly.  A few cheap
counters support the verification suite without retaining per-round
records: zero-gap consistency, mistake-implies-new-arcs, exact volume
floor, and per-mistake volume shrink ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class RegretLedger:
    d: int
    gaps: list = field(default_factory=list)
    records: list = field(default_factory=list)
    R_T: float = 0.0
    R_star_T: float = 0.0
    mistakes: int = 0
    restarts: int = 0
    realized_C: int = 0
    skipped_corruptions: int = 0
    G_max: float = 0.0
    cycle_detections: int = 0
    segment_mistakes: list = field(default_factory=lambda: [0])
    rounds: int = 0
    nonmistake_nonzero_gaps: int = 0
    mistakes_without_new_arcs: int = 0
    mistake_shrink_ratios: list = field(default_factory=list)
    min_ext_count: int | None = None
    aborted: str | None = None

    def add_round(self, record, gap_star, round_gap_range, keep_record=True,
                  shrink=None):
        self.rounds += 1
        self.gaps.append(record.gap)
        self.R_T += record.gap
        record.cum_regret = self.R_T
        self.R_star_T += gap_star
        if round_gap_range > self.G_max:
            self.G_max = round_gap_range
        if record.mistake:
            self.mistakes += 1
            self.segment_mistakes[-1] += 1
            if not record.new_arcs:
                self.mistakes_without_new_arcs += 1
        elif record.gap != 0.0:
            self.nonmistake_nonzero_gaps += 1
        if record.corrupted:
            self.realized_C += 1
        if record.restarted:
            self.restarts += 1
            self.segment_mistakes.append(0)
        if shrink is not None:
            prev_count, count = shrink
            if self.min_ext_count is None or count < self.min_ext_count:
                self.min_ext_count = count
            if record.mistake and not record.restarted:
                self.mistake_shrink_ratios.append(Fraction(count, prev_count))
        if keep_record:
            self.records.append(record)

    def summary(self):
        return {
            "rounds": self.rounds,
            "R_T": self.R_T,
            "R_star_T": self.R_star_T,
            "mistakes": self.mistakes,
            "restarts": self.restarts,
            "realized_C": self.realized_C,
            "skipped_corruptions": self.skipped_corruptions,
            "G_max": self.G_max,
            "cycle_detections": self.cycle_detections,
            "segment_mistakes": list(self.segment_mistakes),
            "aborted": self.aborted,
        }
