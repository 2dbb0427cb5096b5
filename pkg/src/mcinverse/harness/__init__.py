from .agent import AgentSpec, CorruptionPlan, agent_act
from .config import ConfigError, ExperimentConfig, load_config, parse_config
from .ledger import RegretLedger
from .runner import run_experiment
from .sequence import build_sequence
from .verify import VerifyReport, verify_trace

__all__ = [
    "AgentSpec", "CorruptionPlan", "agent_act",
    "ConfigError", "ExperimentConfig", "load_config", "parse_config",
    "RegretLedger", "run_experiment", "build_sequence",
    "VerifyReport", "verify_trace",
]
