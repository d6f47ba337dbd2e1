"""Optimal cop strategies and expected capture times against a known gamble."""

from .bench import (
    BenchConfig,
    BenchRow,
    gen_random_gamble,
    gen_random_graph,
    run_benchmark,
    write_csv,
)
from .errors import (
    CopChaseError,
    EnumerationCapError,
    InternalInvariantError,
    ParseError,
    SimulationUnsupportedError,
    ValidationError,
)
from .graph import Gamble, Graph, build_graph, closed_neighborhood, validate_gamble
from .instances import parse_instance, serialize_instance
from .oracle import (
    ENUMERATION_CAP,
    StrategyEvaluation,
    enumerate_strategies,
    evaluate_stationary_strategy,
    oracle_optimal,
    strategy_space_size,
)
from .simulate import (
    AliasSampler,
    SimReport,
    SplitMix64Stream,
    sample_gamble,
    simulate_chase,
)
from .solver import (
    AGREEMENT_TOL,
    IMPROVE_EPS,
    Solution,
    Strategy,
    bellman_residual,
    bellman_update,
    chase_path,
    evaluate_stay_forever,
    identity_strategy,
    solve_iterative,
    solve_priority,
    times_close,
    validate_strategy,
)

__all__ = [
    "AGREEMENT_TOL",
    "AliasSampler",
    "BenchConfig",
    "BenchRow",
    "CopChaseError",
    "ENUMERATION_CAP",
    "EnumerationCapError",
    "Gamble",
    "Graph",
    "IMPROVE_EPS",
    "InternalInvariantError",
    "ParseError",
    "SimReport",
    "SimulationUnsupportedError",
    "Solution",
    "SplitMix64Stream",
    "Strategy",
    "StrategyEvaluation",
    "ValidationError",
    "bellman_residual",
    "bellman_update",
    "build_graph",
    "chase_path",
    "closed_neighborhood",
    "enumerate_strategies",
    "evaluate_stationary_strategy",
    "evaluate_stay_forever",
    "gen_random_gamble",
    "gen_random_graph",
    "identity_strategy",
    "oracle_optimal",
    "parse_instance",
    "run_benchmark",
    "sample_gamble",
    "serialize_instance",
    "simulate_chase",
    "solve_iterative",
    "solve_priority",
    "strategy_space_size",
    "times_close",
    "validate_gamble",
    "validate_strategy",
    "write_csv",
]

__version__ = "0.1.0"
