import json
import math
import random

import pytest

from mcinverse import ExplicitSet, SegmentEmbed, UniformMatroid
from mcinverse.harness import (ConfigError, agent_act, build_sequence,
                               load_config, parse_config, run_experiment,
                               verify_trace)
from mcinverse.harness.agent import (AgentSpec, CorruptionPlan, agent_act_detail,
                                     build_plan, make_w_star)
from mcinverse.harness.cli import main as cli_main
from mcinverse.harness.verify import TraceError


def e(d, i):
    return tuple(1 if k == i else 0 for k in range(d))


def base_doc(**over):
    doc = {
        "d": 4, "t": 200, "seed": 5,
        "family": {"kind": "random_matroid"},
        "agent": {"w_star": "random"},
        "corruption": {"kind": "none"},
        "learner": {"variant": "centroid"},
    }
    doc.update(over)
    return doc


TWO_ACTION = {
    "d": 3, "t": 4, "seed": 7,
    "family": {"kind": "two_action_script"},
    "agent": {"w_star": [3.0, 2.0, 1.0]},
    "corruption": {"kind": "fixed_rounds", "rounds": [2]},
    "learner": {"variant": "robust"},
}


class TestAgent:
    def test_optimal_action(self):
        agent = AgentSpec((3.0, 2.0, 1.0))
        plan = CorruptionPlan()
        feasible = ExplicitSet([e(3, 0), e(3, 1)])
        assert agent_act(agent, feasible, plan, 1) == e(3, 0)

    def test_second_best_corruption(self):
        agent = AgentSpec((3.0, 2.0, 1.0))
        plan = build_plan({"kind": "second_best", "c": 1})
        feasible = ExplicitSet([e(3, 1), e(3, 2)])
        action = agent_act(agent, feasible, plan, 1)
        assert action == e(3, 2)
        assert plan.realized == 1

    def test_singleton_corruption_skipped(self):
        agent = AgentSpec((2.0, 1.0))
        plan = build_plan({"kind": "second_best", "c": 1})
        action, corrupted, _ = agent_act_detail(
            agent, UniformMatroid(2, 2), plan, 1)
        assert action == (1, 1)
        assert not corrupted
        assert plan.realized == 0
        assert plan.skipped == 1

    def test_w_star_distinct_required(self):
        with pytest.raises(ValueError):
            AgentSpec((1.0, 1.0))

    def test_make_w_star_separated(self):
        rng = random.Random(1)
        for _ in range(20):
            spec = make_w_star(5, rng, scale=1.0)
            s = sorted(spec.w_star)
            assert all(b - a > 0 for a, b in zip(s, s[1:]))
            assert abs(sum(spec.w_star) - 1.0) < 1e-12

    def test_cycle_hiding_prefers_acyclic(self):
        from mcinverse.orderstate import ArcSet
        agent = AgentSpec((3.0, 2.0, 1.0))
        plan = build_plan({"kind": "cycle_hiding", "c": 1})
        arcs = ArcSet(3)
        arcs.add_arcs([(1, 2)])
        # second-best on {e1,e2} would be e2, whose arc (2,1) closes a cycle
        # only with (1,2); here it does, so cycle-hiding must still pick the
        # only suboptimal point (no acyclic alternative exists)
        feasible = ExplicitSet([e(3, 1), e(3, 2)])
        action = agent_act(agent, feasible, plan, 1, arcs=arcs)
        assert action == e(3, 2)


class TestSequences:
    def test_two_action_script(self):
        cfg = parse_config(TWO_ACTION)
        gen = iter(build_sequence(cfg))
        sets = [next(gen) for _ in range(4)]
        assert sets[0].enumerate_points() == sorted([e(3, 0), e(3, 1)])
        assert sets[1].enumerate_points() == sorted([e(3, 1), e(3, 2)])
        assert sets[2].enumerate_points() == sets[0].enumerate_points()
        assert sets[3].enumerate_points() == sets[1].enumerate_points()

    def test_segment_cycle_dimensions(self):
        cfg = parse_config(base_doc(
            d=17, family={"kind": "segment_cycle", "base_d": 16}))
        gen = iter(build_sequence(cfg))
        first = next(gen)
        assert isinstance(first, SegmentEmbed)
        assert first.d == 17
        assert first.k == 1  # sqrt(16)/4
        assert first.axis == 0
        assert next(gen).axis == 1
        pts = first.enumerate_points()
        assert min(p[0] for p in pts) == -1
        assert max(p[0] for p in pts) == 1

    def test_segment_cycle_k_rounds_down(self):
        cfg = parse_config(base_doc(
            d=11, family={"kind": "segment_cycle", "base_d": 10}))
        gen = build_sequence(cfg)
        assert next(iter(gen)).k == 1  # floor(sqrt(10)/4) floored to 1

    def test_fixed_stream(self):
        cfg = parse_config(base_doc(
            d=3, family={"kind": "fixed",
                         "set": {"family": "uniform_matroid", "d": 3, "m": 1}}))
        gen = iter(build_sequence(cfg))
        a, b = next(gen), next(gen)
        assert a.descriptor() == b.descriptor()

    def test_stream_deterministic(self):
        cfg = parse_config(base_doc())
        descs1 = [s.descriptor() for _, s in zip(range(10),
                                                 iter(build_sequence(cfg)))]
        descs2 = [s.descriptor() for _, s in zip(range(10),
                                                 iter(build_sequence(cfg)))]
        assert descs1 == descs2


class TestConfig:
    def test_missing_field(self):
        doc = base_doc()
        del doc["agent"]
        with pytest.raises(ConfigError):
            parse_config(doc)

    def test_bad_family_kind(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(family={"kind": "mystery"}))

    def test_w_star_length(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(agent={"w_star": [1.0, 2.0]}))

    def test_w_star_duplicates(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(agent={"w_star": [1.0, 1.0, 2.0, 3.0]}))

    def test_two_action_script_needs_d3(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(d=4, family={"kind": "two_action_script"}))

    def test_segment_dimension_mismatch(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(
                d=16, family={"kind": "segment_cycle", "base_d": 16}))

    def test_bad_fixed_family_params(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(
                d=2, family={"kind": "fixed",
                             "set": {"family": "lattice_simplex", "d": 2,
                                     "cap": 2, "m": 9}}))

    def test_corruption_needs_budget(self):
        with pytest.raises(ConfigError):
            parse_config(base_doc(corruption={"kind": "second_best"}))

    def test_load_config_bad_json(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(p)


class TestRunExperiment:
    def test_zero_horizon(self, tmp_path):
        trace = tmp_path / "t.jsonl"
        ledger = run_experiment(parse_config(base_doc(t=0)), trace_path=trace)
        assert ledger.R_T == 0.0
        lines = trace.read_text().strip().splitlines()
        kinds = [json.loads(l)["type"] for l in lines]
        assert kinds == ["header", "footer"]

    def test_accounting_identity(self):
        ledger = run_experiment(parse_config(base_doc()))
        assert ledger.R_T == ledger.records[-1].cum_regret
        total = 0.0
        for g in ledger.gaps:
            total += g
        assert total == ledger.R_T

    def test_uncorrupted_structure(self):
        ledger = run_experiment(parse_config(base_doc(t=400)))
        for rec in ledger.records:
            if rec.mistake:
                assert rec.new_arcs
            else:
                assert rec.gap == 0.0
        assert ledger.nonmistake_nonzero_gaps == 0
        assert ledger.mistakes_without_new_arcs == 0
        assert ledger.cycle_detections == 0

    def test_corrupted_realized_count(self):
        ledger = run_experiment(parse_config(base_doc(
            t=300, learner={"variant": "robust"},
            corruption={"kind": "second_best", "c": 5})))
        corrupted = sum(1 for r in ledger.records if r.corrupted)
        assert corrupted == ledger.realized_C
        assert ledger.restarts <= ledger.realized_C

    def test_random_rounds_plan(self):
        ledger = run_experiment(parse_config(base_doc(
            t=300, learner={"variant": "robust"},
            corruption={"kind": "random_rounds", "c": 8})))
        assert ledger.realized_C + ledger.skipped_corruptions == 8

    def test_byte_identical_traces(self, tmp_path):
        doc = base_doc(t=250, learner={"variant": "robust"},
                       corruption={"kind": "second_best", "c": 3})
        t1, t2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run_experiment(parse_config(doc), trace_path=t1)
        run_experiment(parse_config(doc), trace_path=t2)
        assert t1.read_bytes() == t2.read_bytes()

    def test_exact_geometry_off(self):
        ledger = run_experiment(parse_config(base_doc(t=60)),
                                exact_geometry=False)
        assert all(r.volume is None for r in ledger.records)

    def test_nonrobust_aborts_on_corruption_cycle(self, tmp_path):
        # the scripted corrupted sequence closes a cycle at round 4; a
        # centroid learner cannot restart, so the run stops there
        doc = dict(TWO_ACTION)
        doc["learner"] = {"variant": "centroid"}
        doc["t"] = 8
        trace = tmp_path / "abort.jsonl"
        ledger = run_experiment(parse_config(doc), trace_path=trace)
        assert ledger.aborted
        assert ledger.rounds == 4
        assert ledger.cycle_detections == 1
        kinds = [json.loads(l)["type"]
                 for l in trace.read_text().splitlines()]
        assert kinds == ["header"] + ["round"] * 4 + ["abort", "footer"]
        report = verify_trace(trace)
        assert report.ok
        assert report.optimality_flags == [2]


class TestVerifyTrace:
    def test_clean_trace(self, tmp_path):
        trace = tmp_path / "t.jsonl"
        run_experiment(parse_config(base_doc(t=150)), trace_path=trace)
        report = verify_trace(trace)
        assert report.ok
        assert report.optimality_flags == []

    def test_scripted_corruption_flags_round_two(self, tmp_path):
        trace = tmp_path / "scripted.jsonl"
        run_experiment(parse_config(TWO_ACTION), trace_path=trace)
        report = verify_trace(trace)
        assert report.ok
        assert report.optimality_flags == [2]

    def test_tampered_gap_flagged(self, tmp_path):
        trace = tmp_path / "t.jsonl"
        run_experiment(parse_config(base_doc(t=40)), trace_path=trace)
        lines = trace.read_text().splitlines()
        rec = json.loads(lines[10])
        assert rec["type"] == "round"
        rec["gap"] = rec["gap"] + 0.5
        lines[10] = json.dumps(rec, sort_keys=True, separators=(",", ":"))
        trace.write_text("\n".join(lines) + "\n")
        report = verify_trace(trace)
        assert not report.ok
        gap_violations = [v for v in report.violations if v[1] == "gap_mismatch"]
        assert len(gap_violations) == 1
        assert gap_violations[0][0] == rec["t"]

    def test_unreadable_trace(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text("this is not json\n")
        with pytest.raises(TraceError):
            verify_trace(bad)


class TestCli:
    def test_run_and_verify(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(base_doc(t=50)))
        assert cli_main(["run", "--config", str(cfg_path),
                         "--out", str(tmp_path)]) == 0
        traces = list(tmp_path.glob("trace_*.jsonl"))
        assert len(traces) == 1
        assert cli_main(["verify", str(traces[0])]) == 0

    def test_figure_data(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(base_doc(t=50)))
        cli_main(["run", "--config", str(cfg_path), "--out", str(tmp_path)])
        trace = next(tmp_path.glob("trace_*.jsonl"))
        out_csv = tmp_path / "fig.csv"
        assert cli_main(["figure-data", str(trace),
                         "--out", str(out_csv)]) == 0
        header = out_csv.read_text().splitlines()[0]
        assert header == ("variant,d,corruption_c,realized_c,seed,round,"
                          "cum_regret,mistakes,volume_log,restart_flag")

    def test_sweep(self, tmp_path):
        assert cli_main(["sweep", "--d", "3", "--corruption", "0,1",
                         "--variant", "robust", "--seeds", "1",
                         "--t", "60", "--out", str(tmp_path)]) == 0
        csv_path = tmp_path / "sweep.csv"
        lines = csv_path.read_text().strip().splitlines()
        assert len(lines) == 1 + 2 * 60

    def test_sweep_nonrobust_with_corruption_survives(self, tmp_path):
        # corrupted cells may abort individual runs but the grid completes
        assert cli_main(["sweep", "--d", "3,4", "--corruption", "0,2",
                         "--variant", "robust,centroid", "--seeds", "2",
                         "--t", "150", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "sweep.csv").exists()

    def test_bad_config_exit_code(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(base_doc(family={"kind": "zzz"})))
        assert cli_main(["run", "--config", str(cfg_path)]) == 2

    def test_verify_exit_on_violation(self, tmp_path):
        trace = tmp_path / "t.jsonl"
        run_experiment(parse_config(base_doc(t=30)), trace_path=trace)
        lines = trace.read_text().splitlines()
        rec = json.loads(lines[5])
        rec["gap"] = 123.0
        lines[5] = json.dumps(rec, sort_keys=True, separators=(",", ":"))
        trace.write_text("\n".join(lines) + "\n")
        assert cli_main(["verify", str(trace)]) == 1
