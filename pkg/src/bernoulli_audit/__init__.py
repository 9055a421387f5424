"""Bernoulli ballot-polling risk-limiting audit toolkit."""

from .audit import (
    AuditConfig,
    AuditError,
    AuditState,
    Bundle,
    Contest,
    InterpretationRecord,
    create_audit,
)
from .planner import PlanParams, asn, initial_rate, rate_for_power, simulate_power
from .prng import Generator, SeedError, new_generator, validate_seed
from .risk import (
    ReportedTallies,
    RiskResult,
    SampleTally,
    audit_decision,
    log_null_likelihood,
    optimal_nuisance,
    p_value,
    pair_matrix_p_values,
)
from .sampler import SkipSequence, compose_rates, geometric_skip, sample_bundle, sample_round_k
from .simulator import TrialOutcome, compare_workload, run_bbp_trial, run_bravo_trial

__all__ = [
    "AuditConfig",
    "AuditError",
    "AuditState",
    "Bundle",
    "Contest",
    "Generator",
    "InterpretationRecord",
    "PlanParams",
    "ReportedTallies",
    "RiskResult",
    "SampleTally",
    "SeedError",
    "SkipSequence",
    "TrialOutcome",
    "asn",
    "audit_decision",
    "compare_workload",
    "compose_rates",
    "create_audit",
    "geometric_skip",
    "initial_rate",
    "log_null_likelihood",
    "new_generator",
    "optimal_nuisance",
    "p_value",
    "pair_matrix_p_values",
    "rate_for_power",
    "run_bbp_trial",
    "run_bravo_trial",
    "sample_bundle",
    "sample_round_k",
    "simulate_power",
    "validate_seed",
]

__version__ = "0.1.0"
