"""Local-search heuristics over the shared incremental cut state.

All four solvers share the same conventions: ties among equally good
vertices go to the lowest id, stochastic choices come from a single
seeded generator, and the best assignment ever visited is what gets
returned (the search itself may move downhill).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .graph import CutState, Graph, cut_value

SOLVER_KINDS = ("fg", "rg", "tabu", "eo")

_NEG_INF = np.iinfo(np.int64).min // 4


@dataclass(frozen=True)
class SolverConfig:
    """Parameters for one solver run.

    ``max_steps`` defaults to twice the vertex count at run time. ``tenure``
    only matters for ``tabu`` (0 disables the memory entirely), ``tau`` only
    for ``eo``. ``fg`` always starts from the empty side regardless of
    ``init``.
    """

    kind: str
    tenure: int = 20
    tau: float = 1.4
    max_steps: Optional[int] = None
    seed: int = 0
    init: str = "random"

    def __post_init__(self):
        if self.kind not in SOLVER_KINDS:
            raise ValueError(f"unknown solver kind {self.kind!r}; expected one of {SOLVER_KINDS}")
        if self.tenure < 0:
            raise ValueError(f"tenure must be >= 0, got {self.tenure}")
        if self.kind == "eo" and not self.tau > 1:
            raise ValueError(f"tau must be > 1, got {self.tau}")
        if self.max_steps is not None and self.max_steps < 0:
            raise ValueError(f"max_steps must be >= 0, got {self.max_steps}")
        if self.init not in ("random", "empty"):
            raise ValueError(f"init must be 'random' or 'empty', got {self.init!r}")


@dataclass
class SolveOutcome:
    best_value: int
    best_side: np.ndarray
    steps_taken: int
    trajectory: List[Tuple[int, int]] = field(default_factory=list)


def _resolve_steps(config: SolverConfig, graph: Graph) -> int:
    return 2 * graph.n if config.max_steps is None else config.max_steps


def _initial_side(config: SolverConfig, graph: Graph, rng: np.random.Generator) -> np.ndarray:
    if config.init == "empty":
        return np.zeros(graph.n, dtype=np.int8)
    return rng.integers(0, 2, graph.n).astype(np.int8)


class _BestTracker:
    """Best-ever value/assignment plus the improvement trajectory."""

    def __init__(self, state: CutState):
        self.value = state.cut_value
        self.side = state.copy_side()
        self.trajectory = [(0, state.cut_value)]

    def observe(self, state: CutState) -> None:
        if state.cut_value > self.value:
            self.value = state.cut_value
            self.side = state.copy_side()
            self.trajectory.append((state.step, state.cut_value))

    def outcome(self, steps_taken: int) -> SolveOutcome:
        return SolveOutcome(self.value, self.side, steps_taken, self.trajectory)


def forward_greedy(graph: Graph) -> SolveOutcome:
    """Grow a solution from the empty side, never removing a vertex.

    Flips the not-yet-added vertex of largest gain while that gain is
    strictly positive; deterministic, so a single run suffices.
    """
    state = CutState(graph, np.zeros(graph.n, dtype=np.int8))
    best = _BestTracker(state)
    added = np.zeros(graph.n, dtype=bool)
    while True:
        scores = np.where(added, _NEG_INF, state.gain)
        v = int(np.argmax(scores)) if graph.n else 0
        if graph.n == 0 or scores[v] <= 0:
            break
        state.flip(v)
        added[v] = True
        best.observe(state)
    return best.outcome(state.step)


def reversible_greedy(graph: Graph, config: SolverConfig) -> SolveOutcome:
    """Hill-climb from a random assignment, accepting non-negative gains.

    Stops when every gain is negative or after ``max_steps`` flips (the cap
    guards zero-gain plateau cycles).
    """
    if config.kind != "rg":
        raise ValueError(f"expected kind 'rg', got {config.kind!r}")
    rng = np.random.default_rng(config.seed)
    state = CutState(graph, _initial_side(config, graph, rng))
    best = _BestTracker(state)
    max_steps = _resolve_steps(config, graph)
    for _ in range(max_steps):
        v = int(np.argmax(state.gain))
        if state.gain[v] < 0:
            break
        state.flip(v)
        best.observe(state)
    return best.outcome(state.step)


def tabu_search(graph: Graph, config: SolverConfig) -> SolveOutcome:
    """Steepest-ascent search with a short-term memory of recent flips.

    Per step: among vertices that are not tabu, or whose move would beat the
    best value seen so far (aspiration), flip the one with the largest gain.
    The flipped vertex becomes tabu for ``tenure`` countdown ticks; all
    counters tick down at the end of every step. Runs exactly ``max_steps``
    steps. If every vertex is tabu and none aspirates, the vertex whose
    tabu expires soonest is flipped (ties to the lowest id).
    """
    if config.kind != "tabu":
        raise ValueError(f"expected kind 'tabu', got {config.kind!r}")
    rng = np.random.default_rng(config.seed)
    state = CutState(graph, _initial_side(config, graph, rng))
    best = _BestTracker(state)
    max_steps = _resolve_steps(config, graph)
    tabu = np.zeros(graph.n, dtype=np.int64)
    for _ in range(max_steps):
        eligible = (tabu == 0) | (state.cut_value + state.gain > best.value)
        if eligible.any():
            scores = np.where(eligible, state.gain, _NEG_INF)
            v = int(np.argmax(scores))
        else:
            v = int(np.argmin(tabu))
        state.flip(v)
        tabu[v] = config.tenure
        best.observe(state)
        np.subtract(tabu, 1, out=tabu, where=tabu > 0)
    return best.outcome(state.step)


def rank_probabilities(n: int, tau: float) -> np.ndarray:
    """P(rank k) proportional to k^-tau for ranks 1..n."""
    if n < 1:
        raise ValueError("need at least one rank")
    ranks = np.arange(1, n + 1, dtype=np.float64)
    weights = ranks ** (-tau)
    return weights / weights.sum()


def sample_rank(rng: np.random.Generator, cumulative: np.ndarray) -> int:
    """0-based rank index drawn from precomputed cumulative probabilities."""
    return int(np.searchsorted(cumulative, rng.random(), side="right"))


def extremal_optimization(graph: Graph, config: SolverConfig) -> SolveOutcome:
    """Flip the rank-k-by-gain vertex, k drawn from a power law each step.

    Vertices are re-ranked by descending gain every step (ties to lowest id)
    and rank k is sampled with probability proportional to k^-tau.
    """
    if config.kind != "eo":
        raise ValueError(f"expected kind 'eo', got {config.kind!r}")
    rng = np.random.default_rng(config.seed)
    state = CutState(graph, _initial_side(config, graph, rng))
    best = _BestTracker(state)
    max_steps = _resolve_steps(config, graph)
    if graph.n == 0 or max_steps == 0:
        return best.outcome(0)
    cumulative = np.cumsum(rank_probabilities(graph.n, config.tau))
    for _ in range(max_steps):
        order = np.argsort(-state.gain, kind="stable")
        k = sample_rank(rng, cumulative)
        state.flip(int(order[k]))
        best.observe(state)
    return best.outcome(state.step)


def solve(graph: Graph, config: SolverConfig) -> SolveOutcome:
    """Dispatch to the solver named by ``config.kind``."""
    if config.kind == "fg":
        return forward_greedy(graph)
    if config.kind == "rg":
        return reversible_greedy(graph, config)
    if config.kind == "tabu":
        return tabu_search(graph, config)
    if config.kind == "eo":
        return extremal_optimization(graph, config)
    raise ValueError(config.kind)  # pragma: no cover - validated in config


def verify_outcome(graph: Graph, outcome: SolveOutcome) -> bool:
    """True when the reported best value matches its assignment from scratch."""
    return cut_value(graph, outcome.best_side) == outcome.best_value
