"""Command line driver.

Subcommands:
    run          execute one config, write a trace, print the summary
    verify       audit a trace file; non-zero exit on integrity violations
    sweep        grid over d, corruption level, and learner variant;
                 emits one combined CSV (plus optional per-run traces)
    figure-data  convert trace files to the plotting CSV schema

CSV schema (one row per round):
    variant,d,corruption_c,realized_c,seed,round,cum_regret,mistakes,
    volume_log,restart_flag
volume_log is the natural log of the exact volume, empty when volumes
were not tracked.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .config import ConfigError, load_config, parse_config
from .runner import run_experiment
from .verify import TraceError, read_trace, verify_trace

CSV_COLUMNS = ["variant", "d", "corruption_c", "realized_c", "seed", "round",
               "cum_regret", "mistakes", "volume_log", "restart_flag"]

DEFAULT_BASE = {
    "d": 4, "t": 1000, "seed": 1,
    "family": {"kind": "random_matroid"},
    "agent": {"w_star": "random"},
    "corruption": {"kind": "none"},
    "learner": {"variant": "centroid"},
}


def _volume_log(volume_str):
    if not volume_str:
        return ""
    num, den = volume_str.split("/")
    if int(num) == 0:
        return ""  # contradictory arc state on an aborted round
    return repr(math.log(int(num)) - math.log(int(den)))


def _ledger_rows(cfg, ledger):
    mistakes = 0
    for rec in ledger.records:
        mistakes += 1 if rec.mistake else 0
        yield {
            "variant": cfg.learner["variant"],
            "d": cfg.d,
            "corruption_c": cfg.corruption.get("c", 0),
            "realized_c": ledger.realized_C,
            "seed": cfg.seed,
            "round": rec.t,
            "cum_regret": repr(rec.cum_regret),
            "mistakes": mistakes,
            "volume_log": _volume_log(rec.volume),
            "restart_flag": int(rec.restarted),
        }


def _trace_rows(path):
    header, rounds, footer = read_trace(path)
    cfg = header["config"]
    mistakes = 0
    for rec in rounds:
        mistakes += 1 if rec["mistake"] else 0
        yield {
            "variant": cfg["learner"]["variant"],
            "d": cfg["d"],
            "corruption_c": cfg["corruption"].get("c", 0),
            "realized_c": footer["realized_C"],
            "seed": cfg["seed"],
            "round": rec["t"],
            "cum_regret": repr(rec["cum_regret"]),
            "mistakes": mistakes,
            "volume_log": _volume_log(rec.get("volume")),
            "restart_flag": int(rec["restarted"]),
        }


def _print_summary(name, ledger):
    s = ledger.summary()
    print(f"{name}: rounds={s['rounds']} R_T={s['R_T']:.6g} "
          f"R*_T={s['R_star_T']:.6g} mistakes={s['mistakes']} "
          f"restarts={s['restarts']} realized_C={s['realized_C']} "
          f"G_max={s['G_max']:.6g}")
    if s["aborted"]:
        print(f"{name}: aborted after round {s['rounds']}: {s['aborted']}")


def cmd_run(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    out_dir = Path(args.out or cfg.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    trace = out_dir / f"trace_{cfg.learner['variant']}_d{cfg.d}_s{cfg.seed}.jsonl"
    ledger = run_experiment(cfg, trace_path=trace,
                            exact_geometry=args.exact_geometry == "on")
    _print_summary(trace.name, ledger)
    print(f"trace written to {trace}")
    return 0


def cmd_verify(args):
    report = verify_trace(args.trace)
    print(report.render())
    return 0 if report.ok else 1


def _int_list(text):
    return [int(v) for v in text.split(",") if v != ""]


def cmd_sweep(args):
    base = json.load(open(args.config)) if args.config else dict(DEFAULT_BASE)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / args.csv
    dims = _int_list(args.d)
    levels = _int_list(args.corruption)
    variants = args.variant.split(",")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for d in dims:
            for c in levels:
                for variant in variants:
                    for seed in range(args.seed0, args.seed0 + args.seeds):
                        doc = json.loads(json.dumps(base))
                        doc["d"] = d
                        doc["seed"] = seed
                        if args.t is not None:
                            doc["t"] = args.t
                        doc["corruption"] = ({"kind": "none"} if c == 0 else
                                             {"kind": "second_best", "c": c})
                        doc.setdefault("learner", {})["variant"] = variant
                        cfg = parse_config(doc)
                        trace = None
                        if args.traces:
                            trace = out_dir / (f"trace_{variant}_d{d}_c{c}"
                                               f"_s{seed}.jsonl")
                        ledger = run_experiment(
                            cfg, trace_path=trace,
                            exact_geometry=args.exact_geometry == "on")
                        for row in _ledger_rows(cfg, ledger):
                            writer.writerow(row)
                        _print_summary(f"d={d} c={c} {variant} seed={seed}",
                                       ledger)
    print(f"sweep CSV written to {csv_path}")
    return 0


def cmd_figure_data(args):
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for trace in args.traces:
            for row in _trace_rows(trace):
                writer.writerow(row)
    print(f"figure data written to {args.out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcinverse",
        description="online inverse linear optimization over M-convex "
                    "action sets: simulation and audit tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one experiment config")
    p_run.add_argument("--config", required=True, help="JSON config path")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.add_argument("--exact-geometry", choices=("on", "off"),
                       default="on")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="audit a trace file")
    p_verify.add_argument("trace")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="grid over d, corruption, variant")
    p_sweep.add_argument("--config", default=None,
                         help="base JSON config (defaults built in)")
    p_sweep.add_argument("--d", default="3,4,5,6",
                         help="comma-separated dimensions")
    p_sweep.add_argument("--corruption", default="0",
                         help="comma-separated corruption levels")
    p_sweep.add_argument("--variant", default="centroid",
                         help="comma-separated learner variants")
    p_sweep.add_argument("--seeds", type=int, default=1,
                         help="number of seeds per cell")
    p_sweep.add_argument("--seed0", type=int, default=1, help="first seed")
    p_sweep.add_argument("--t", type=int, default=None,
                         help="override horizon")
    p_sweep.add_argument("--out", default="sweep_out")
    p_sweep.add_argument("--csv", default="sweep.csv")
    p_sweep.add_argument("--traces", action="store_true",
                         help="also write per-run trace files")
    p_sweep.add_argument("--exact-geometry", choices=("on", "off"),
                         default="on")
    p_sweep.set_defaults(func=cmd_sweep)

    p_fig = sub.add_parser("figure-data",
                           help="convert traces to the plotting CSV")
    p_fig.add_argument("traces", nargs="+")
    p_fig.add_argument("--out", required=True)
    p_fig.set_defaults(func=cmd_figure_data)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, TraceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
