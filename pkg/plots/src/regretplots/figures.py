"""Figure rendering from regret-simulation CSV exports.

Consumes only the documented CSV schema and never recomputes any learner
logic.  One row per round:

    variant,d,corruption_c,realized_c,seed,round,cum_regret,mistakes,
    volume_log,restart_flag

`round` is 1-based, `mistakes` is cumulative within the run, `volume_log`
is the natural log of the exact search-region volume (empty when the run
did not track volumes), `restart_flag` is 0/1.  The identity columns
(variant, d, corruption_c, realized_c, seed) distinguish runs in sweep
exports.

Figure kinds:
    regret      cumulative regret vs round, one line per run
    volume      log-volume staircase plus the per-mistake shrink-slope
                reference of the first run
    mistakes    max mistakes per segment vs dimension, against the
                closed-form ceil(log_{e/(e-1)} d!) reference curve
    corruption  final regret vs realized corruption level
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

KINDS = ("regret", "volume", "mistakes", "corruption")

KIND_COLUMNS = {
    "regret": ("round", "cum_regret"),
    "volume": ("round", "volume_log", "mistakes", "restart_flag"),
    "mistakes": ("d", "round", "mistakes", "restart_flag"),
    "corruption": ("realized_c", "round", "cum_regret"),
}

IDENTITY_COLUMNS = ("variant", "d", "corruption_c", "realized_c", "seed")

LOG_SHRINK = math.log(1.0 - 1.0 / math.e)


class MissingColumn(ValueError):
    def __init__(self, column, path):
        self.column = column
        super().__init__(f"CSV {path} is missing required column {column!r}")


@dataclass(frozen=True)
class PlotSpec:
    csv_paths: tuple
    kind: str
    out_path: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; "
                             f"expected one of {KINDS}")
        object.__setattr__(self, "csv_paths", tuple(self.csv_paths))


def segment_bound(d):
    """Closed-form per-segment mistake cap: ceil(log_{e/(e-1)} d!)."""
    return math.ceil(math.log(math.factorial(d))
                     / math.log(math.e / (math.e - 1.0)))


def load_rows(spec):
    """Rows from every input CSV; required columns checked per file."""
    required = KIND_COLUMNS[spec.kind]
    rows = []
    for path in spec.csv_paths:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                continue  # zero-byte file: nothing to plot
            for col in required:
                if col not in reader.fieldnames:
                    raise MissingColumn(col, path)
            rows.extend(reader)
    return rows


def _run_key(row):
    return tuple(row.get(col, "") for col in IDENTITY_COLUMNS)


def _group_runs(rows):
    groups = {}
    for row in rows:
        groups.setdefault(_run_key(row), []).append(row)
    for key in groups:
        groups[key].sort(key=lambda r: int(r["round"]))
    return dict(sorted(groups.items()))


def max_segment_mistakes(run_rows):
    """Largest within-segment mistake count; the restarting round's
    mistake belongs to the segment it ends."""
    seg_start = 0
    best = 0
    for row in run_rows:
        m = int(row["mistakes"])
        best = max(best, m - seg_start)
        if int(row["restart_flag"]):
            seg_start = m
    return best


def _empty_figure(ax, message):
    ax.annotate(message, xy=(0.5, 0.5), xycoords="axes fraction",
                ha="center", va="center", fontsize=12, color="crimson")


def _render_regret(ax, groups):
    for key, rows in groups.items():
        xs = [int(r["round"]) for r in rows]
        ys = [float(r["cum_regret"]) for r in rows]
        ax.plot(xs, ys, lw=1.0, alpha=0.8, label=_short_label(key))
    ax.set_xlabel("round")
    ax.set_ylabel("cumulative regret")
    ax.set_title("cumulative regret")
    _maybe_legend(ax, groups)


def _render_volume(ax, groups):
    plotted_reference = False
    for key, rows in groups.items():
        pts = [(int(r["round"]), float(r["volume_log"]))
               for r in rows if r["volume_log"] != ""]
        if not pts:
            continue
        ax.step([p[0] for p in pts], [p[1] for p in pts], where="post",
                lw=1.0, alpha=0.7, label=_short_label(key))
        if not plotted_reference:
            ref = []
            seg_start = 0
            for r in rows:
                m = int(r["mistakes"])
                if int(r["restart_flag"]):
                    seg_start = m
                ref.append((int(r["round"]), (m - seg_start) * LOG_SHRINK))
            ax.step([p[0] for p in ref], [p[1] for p in ref], where="post",
                    lw=1.4, ls="--", color="black",
                    label="shrink-per-mistake reference")
            plotted_reference = True
    ax.set_xlabel("round")
    ax.set_ylabel("log volume")
    ax.set_title("search-region log-volume staircase")
    _maybe_legend(ax, groups)


def _render_mistakes(ax, groups):
    xs, ys = [], []
    for key, rows in groups.items():
        xs.append(int(rows[0]["d"]))
        ys.append(max_segment_mistakes(rows))
    ax.scatter(xs, ys, s=24, alpha=0.75, label="observed (max per segment)")
    if xs:
        dims = list(range(min(xs), max(xs) + 1))
        ax.plot(dims, [segment_bound(d) for d in dims], ls="--",
                color="black", marker="o", ms=3, label="per-segment bound")
    ax.set_xlabel("dimension d")
    ax.set_ylabel("mistakes")
    ax.set_title("mistakes per segment vs dimension")
    ax.legend(loc="best", fontsize=8)


def _render_corruption(ax, groups):
    finals = {}
    for key, rows in groups.items():
        c = int(rows[0]["realized_c"])
        finals.setdefault(c, []).append(float(rows[-1]["cum_regret"]))
    levels = sorted(finals)
    for c in levels:
        ax.scatter([c] * len(finals[c]), finals[c], s=22, alpha=0.7,
                   color="tab:blue")
    ax.plot(levels, [sum(v) / len(v) for (c, v) in
                     ((c, finals[c]) for c in levels)],
            color="tab:red", marker="s", ms=4, label="mean")
    ax.set_xlabel("realized corruption level C")
    ax.set_ylabel("final cumulative regret")
    ax.set_title("regret vs corruption level")
    ax.legend(loc="best", fontsize=8)


def _short_label(key):
    variant, d, c, _, seed = key
    parts = [p for p in (variant, f"d={d}" if d else "",
                         f"c={c}" if c else "", f"s={seed}" if seed else "")
             if p]
    return " ".join(parts) or "run"


def _maybe_legend(ax, groups):
    if 0 < len(groups) <= 8:
        ax.legend(loc="best", fontsize=8)


def render(spec):
    """Write the figure for `spec`; returns the output path."""
    rows = load_rows(spec)
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=110)
    try:
        if not rows:
            _empty_figure(ax, "no data rows in input CSV")
        else:
            groups = _group_runs(rows)
            if spec.kind == "regret":
                _render_regret(ax, groups)
            elif spec.kind == "volume":
                _render_volume(ax, groups)
            elif spec.kind == "mistakes":
                _render_mistakes(ax, groups)
            else:
                _render_corruption(ax, groups)
        fig.tight_layout()
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return spec.out_path
