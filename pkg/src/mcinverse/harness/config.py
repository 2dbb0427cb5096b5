"""Experiment configuration: JSON document in, validated config out.

Schema (all fields required unless noted):

    {
      "d": int,                 ambient dimension the learner works in
      "t": int,                 horizon (number of rounds)
      "seed": int,              master seed; child streams derive from it
      "family": {"kind": ...},  sequence generator spec, see sequence.py
      "agent": {"w_star": [..] | "random"},
      "corruption": {"kind": "none" | "fixed_rounds" | "random_rounds"
                              | "second_best" | "cycle_hiding", ...},
      "learner": {"variant": "topo" | "centroid" | "robust",
                  "exact_bound": int (optional, default 9),
                  "weight_mode": "centroid" | "topo" (robust only)},
      "out": str (optional)     default output directory
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

_FAMILY_KINDS = {"fixed", "random_matroid", "random_mconvex",
                 "two_action_script", "segment_cycle"}
_CORRUPTION_KINDS = {"none", "fixed_rounds", "random_rounds", "second_best",
                     "cycle_hiding"}
_VARIANTS = {"topo", "centroid", "robust"}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    d: int
    t: int
    seed: int
    family: dict
    agent: dict
    corruption: dict
    learner: dict
    out: str | None = None
    max_points: int = 10**6

    def to_dict(self):
        return {
            "d": self.d, "t": self.t, "seed": self.seed,
            "family": self.family, "agent": self.agent,
            "corruption": self.corruption, "learner": self.learner,
            "out": self.out, "max_points": self.max_points,
        }


def _require(cond, msg):
    if not cond:
        raise ConfigError(msg)


def parse_config(doc) -> ExperimentConfig:
    _require(isinstance(doc, dict), "config must be a JSON object")
    for key in ("d", "t", "seed", "family", "agent", "corruption", "learner"):
        _require(key in doc, f"config missing required field {key!r}")
    d, t, seed = doc["d"], doc["t"], doc["seed"]
    _require(isinstance(d, int) and d >= 1, "d must be a positive integer")
    _require(isinstance(t, int) and t >= 0, "t must be a non-negative integer")
    _require(isinstance(seed, int), "seed must be an integer")

    family = dict(doc["family"])
    kind = family.get("kind")
    _require(kind in _FAMILY_KINDS,
             f"family.kind must be one of {sorted(_FAMILY_KINDS)}, got {kind!r}")

    agent = dict(doc["agent"])
    w = agent.get("w_star", "random")
    if w != "random":
        _require(isinstance(w, list) and len(w) == d,
                 "agent.w_star must be 'random' or a length-d list")
        _require(len(set(float(v) for v in w)) == d,
                 "agent.w_star components must be pairwise distinct")
    agent["w_star"] = w

    corruption = dict(doc["corruption"])
    ckind = corruption.get("kind", "none")
    _require(ckind in _CORRUPTION_KINDS,
             f"corruption.kind must be one of {sorted(_CORRUPTION_KINDS)}, "
             f"got {ckind!r}")
    if ckind in ("random_rounds", "second_best", "cycle_hiding"):
        c = corruption.get("c")
        _require(isinstance(c, int) and c >= 0,
                 f"corruption.c must be a non-negative integer for {ckind}")
    if ckind == "fixed_rounds":
        rounds = corruption.get("rounds")
        _require(isinstance(rounds, list)
                 and all(isinstance(r, int) and 1 <= r for r in rounds),
                 "corruption.rounds must be a list of 1-based round indices")
    corruption["kind"] = ckind

    learner = dict(doc["learner"])
    variant = learner.get("variant")
    _require(variant in _VARIANTS,
             f"learner.variant must be one of {sorted(_VARIANTS)}, "
             f"got {variant!r}")
    eb = learner.get("exact_bound", 9)
    _require(isinstance(eb, int) and eb >= 1, "learner.exact_bound must be >= 1")
    learner["exact_bound"] = eb
    wm = learner.get("weight_mode", "centroid")
    _require(wm in ("centroid", "topo"), "learner.weight_mode invalid")
    learner["weight_mode"] = wm

    cfg = ExperimentConfig(
        d=d, t=t, seed=seed, family=family, agent=agent,
        corruption=corruption, learner=learner, out=doc.get("out"),
        max_points=doc.get("max_points", 10**6))
    _probe_family(cfg)
    return cfg


def _probe_family(cfg):
    """Build the first instances of the stream; reject bad parameters now.

    Small instances additionally get a full exchange-property check, per
    the contract that every configured family is genuinely M-convex.
    """
    from .sequence import build_sequence
    try:
        gen = build_sequence(cfg)
        it = iter(gen)
        for _ in range(min(cfg.t, 2)):
            inst = next(it)
            if inst.count() <= 500:
                if not inst.verify_m_convexity():
                    raise ConfigError(
                        f"family probe failed the exchange property: "
                        f"{inst.describe()}")
    except ConfigError:
        raise
    except StopIteration:
        pass
    except Exception as exc:
        raise ConfigError(f"invalid family parameters: {exc}") from exc


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    return parse_config(doc)
