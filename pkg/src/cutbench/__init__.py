"""MaxCut heuristics, seeded instance generators, and a benchmark harness."""

from .evaluation import (
    BenchmarkReport,
    BenchSolver,
    ProtocolConfig,
    approx_ratio,
    bench_solver,
    benchmark,
    run_protocol,
    softtabu_bench_solver,
    update_registry_from_report,
)
from .generators import DistributionSpec, generate, generate_batch
from .graph import CutState, Graph, brute_force_optimum, cut_value
from .gset import parse_gset, read_gset_file, serialize_gset, write_gset_file
from .registry import BestKnownRegistry, load_registry, save_registry
from .softtabu import (
    LinearPolicy,
    TrainConfig,
    load_policy,
    save_policy,
    softtabu_solve,
    train,
)
from .solvers import (
    SolveOutcome,
    SolverConfig,
    extremal_optimization,
    forward_greedy,
    reversible_greedy,
    solve,
    tabu_search,
)
from .tuning import GridSpec, default_params, grid_search

__version__ = "0.1.0"

__all__ = [
    "BenchmarkReport",
    "BenchSolver",
    "BestKnownRegistry",
    "CutState",
    "DistributionSpec",
    "Graph",
    "GridSpec",
    "LinearPolicy",
    "ProtocolConfig",
    "SolveOutcome",
    "SolverConfig",
    "TrainConfig",
    "approx_ratio",
    "bench_solver",
    "benchmark",
    "brute_force_optimum",
    "cut_value",
    "default_params",
    "extremal_optimization",
    "forward_greedy",
    "generate",
    "generate_batch",
    "grid_search",
    "load_policy",
    "load_registry",
    "parse_gset",
    "read_gset_file",
    "reversible_greedy",
    "run_protocol",
    "save_policy",
    "save_registry",
    "serialize_gset",
    "softtabu_bench_solver",
    "softtabu_solve",
    "solve",
    "tabu_search",
    "train",
    "update_registry_from_report",
    "write_gset_file",
]
