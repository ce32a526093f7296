"""Episode protocol, approximation ratios, and benchmark aggregation.

A benchmark runs every solver on every instance under a shared episode
protocol, then normalizes values by the best known denominator for each
instance: an EXTERNAL or BRUTE_FORCE registry entry when present, else the
best value any benchmarked solver found (two-pass BEST_FOUND).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .graph import Graph
from .registry import BestKnownRegistry
from .softtabu import LinearPolicy, greedy_rollout
from .solvers import SolveOutcome, SolverConfig, forward_greedy, solve

from dataclasses import replace as _dc_replace


@dataclass(frozen=True)
class ProtocolConfig:
    """Episode budget shared by all stochastic solvers in a run."""

    episodes: int = 50
    steps_factor: float = 2.0
    time_limit: Optional[float] = None
    base_seed: int = 0
    per_solver_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.episodes < 1:
            raise ValueError("episodes must be >= 1")
        if not self.steps_factor > 0:
            raise ValueError("steps_factor must be > 0")

    def steps_for(self, graph: Graph) -> int:
        return int(round(self.steps_factor * graph.n))

    def episodes_for(self, solver_name: str) -> int:
        override = self.per_solver_overrides.get(solver_name, {})
        return int(override.get("episodes", self.episodes))


@dataclass(frozen=True)
class BenchSolver:
    """A named solver the harness can run: (graph, seed, max_steps) -> outcome.

    Deterministic solvers get a single episode regardless of protocol.
    """

    name: str
    run: Callable[[Graph, int, int], SolveOutcome]
    deterministic: bool = False
    train_distribution: Optional[str] = None


def bench_solver(config: SolverConfig, name: Optional[str] = None) -> BenchSolver:
    def run(graph: Graph, seed: int, max_steps: int) -> SolveOutcome:
        return solve(graph, _dc_replace(config, seed=seed, max_steps=max_steps))

    if config.kind == "fg":
        return BenchSolver(name or "fg", lambda g, s, m: forward_greedy(g), deterministic=True)
    return BenchSolver(name or config.kind, run)


def softtabu_bench_solver(
    policy: LinearPolicy, name: str = "softtabu", train_distribution: Optional[str] = None
) -> BenchSolver:
    def run(graph: Graph, seed: int, max_steps: int) -> SolveOutcome:
        return greedy_rollout(policy, graph, seed, max_steps)

    return BenchSolver(name, run, train_distribution=train_distribution)


@dataclass
class ProtocolResult:
    best: SolveOutcome
    episodes_completed: int
    timed_out: bool
    wall_clock_seconds: float


def run_protocol(solver: BenchSolver, graph: Graph, protocol: ProtocolConfig) -> ProtocolResult:
    """Best outcome over seeded episodes (seeds base_seed, base_seed+1, ...).

    Ties keep the earliest episode. A time limit yields a partial result
    flagged as timed out, with however many episodes completed.
    """
    episodes = 1 if solver.deterministic else protocol.episodes_for(solver.name)
    steps = protocol.steps_for(graph)
    start = time.perf_counter()
    best: Optional[SolveOutcome] = None
    completed = 0
    timed_out = False
    for i in range(episodes):
        # the first episode always runs, so a timeout still yields a result
        if (
            completed > 0
            and protocol.time_limit is not None
            and time.perf_counter() - start > protocol.time_limit
        ):
            timed_out = True
            break
        outcome = solver.run(graph, protocol.base_seed + i, steps)
        completed += 1
        if best is None or outcome.best_value > best.best_value:
            best = outcome
    return ProtocolResult(best, completed, timed_out, time.perf_counter() - start)


def approx_ratio(value: int, best_known: int) -> float:
    if best_known <= 0:
        raise ValueError(f"approximation ratio undefined for best_known={best_known}")
    return value / best_known


@dataclass
class InstanceRecord:
    instance: str
    solver: str
    best_value: int
    best_known: Optional[int]
    ratio: Optional[float]
    excluded: bool
    episodes: int
    steps: int
    timed_out: bool
    wall_clock_seconds: float


@dataclass
class SolverGroup:
    solver: str
    distribution: str
    train_distribution: Optional[str]
    mean_ratio: Optional[float]
    std_ratio: Optional[float]
    wall_clock_seconds: float
    records: List[InstanceRecord]


@dataclass
class BenchmarkReport:
    groups: List[SolverGroup]
    metadata: dict = field(default_factory=dict)

    def group(self, solver: str, distribution: Optional[str] = None) -> SolverGroup:
        for g in self.groups:
            if g.solver == solver and (distribution is None or g.distribution == distribution):
                return g
        raise KeyError((solver, distribution))


def _aggregate(ratios: Sequence[float]):
    if not ratios:
        return None, None
    arr = np.asarray(ratios, dtype=np.float64)
    return float(arr.mean()), float(arr.std())  # population std, matching the +/- columns


def benchmark(
    solvers: Sequence[BenchSolver],
    instances: Sequence[Graph],
    protocol: ProtocolConfig,
    registry: Optional[BestKnownRegistry] = None,
    distribution: str = "default",
) -> BenchmarkReport:
    """Run every solver on every instance, then normalize and aggregate."""
    if not instances:
        raise ValueError("instance list is empty")
    names = [g.name or f"instance{i}" for i, g in enumerate(instances)]
    if len(set(names)) != len(names):
        raise ValueError("instance names must be unique within a benchmark")
    registry = registry or BestKnownRegistry()

    # pass 1: run everything
    runs: Dict[str, Dict[str, ProtocolResult]] = {s.name: {} for s in solvers}
    for name, graph in zip(names, instances):
        for solver in solvers:
            runs[solver.name][name] = run_protocol(solver, graph, protocol)

    # pass 2: resolve denominators (pinned registry entries beat best-found)
    denominators: Dict[str, Optional[int]] = {}
    for name in names:
        entry = registry.lookup(name)
        if entry is not None and entry[1] in ("EXTERNAL", "BRUTE_FORCE"):
            denominators[name] = entry[0]
            continue
        observed = max(runs[s.name][name].best.best_value for s in solvers)
        if entry is not None:
            observed = max(observed, entry[0])
        denominators[name] = observed

    groups = []
    for solver in solvers:
        records = []
        ratios = []
        wall = 0.0
        for name, graph in zip(names, instances):
            result = runs[solver.name][name]
            denom = denominators[name]
            excluded = denom is None or denom <= 0
            ratio = None if excluded else approx_ratio(result.best.best_value, denom)
            if not excluded:
                ratios.append(ratio)
            records.append(
                InstanceRecord(
                    instance=name,
                    solver=solver.name,
                    best_value=result.best.best_value,
                    best_known=denom,
                    ratio=ratio,
                    excluded=excluded,
                    episodes=result.episodes_completed,
                    steps=protocol.steps_for(graph),
                    timed_out=result.timed_out,
                    wall_clock_seconds=result.wall_clock_seconds,
                )
            )
            wall += result.wall_clock_seconds
        mean, std = _aggregate(ratios)
        groups.append(
            SolverGroup(
                solver=solver.name,
                distribution=distribution,
                train_distribution=solver.train_distribution,
                mean_ratio=mean,
                std_ratio=std,
                wall_clock_seconds=wall,
                records=records,
            )
        )
    metadata = {
        "base_seed": protocol.base_seed,
        "episodes": protocol.episodes,
        "steps_factor": protocol.steps_factor,
        "solvers": [s.name for s in solvers],
        "instances": names,
    }
    return BenchmarkReport(groups, metadata)


def update_registry_from_report(
    registry: BestKnownRegistry, report: BenchmarkReport
) -> BestKnownRegistry:
    """Fold the report's best values into BEST_FOUND entries (idempotent)."""
    if not report.groups:
        raise ValueError("report has no solver groups")
    for group in report.groups:
        for record in group.records:
            registry.record_best_found(record.instance, record.best_value)
    return registry
