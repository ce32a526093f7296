"""Linear Q-learning agent over two tabu-flavored per-vertex features.

Each vertex is described by its normalized flip gain and by how long ago it
was last flipped; a two-weight linear value function over those features is
trained with one-step Q-learning and drives greedy rollouts at solve time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .generators import DistributionSpec, generate, generate_batch
from .graph import CutState, Graph
from .solvers import SolveOutcome, SolverConfig, tabu_search

GAIN_SCALE_FLOOR = 1.0

# seed offsets keeping the held-out graphs and reference runs off the
# training stream (training consumes seeds base .. base+episodes-1)
_VALIDATION_SEED_OFFSET = 1_000_000_007
_REFERENCE_SEED_OFFSET = 2_000_000_011

POLICY_FORMAT_VERSION = 1


class TrainingDivergedError(RuntimeError):
    def __init__(self, step: int):
        super().__init__(f"non-finite parameters at training step {step}")
        self.step = step


@dataclass
class LinearPolicy:
    """Per-vertex value model Q(v) = weights . x(v) + bias."""

    weights: np.ndarray
    bias: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.shape != (2,):
            raise ValueError(f"expected 2 weights, got shape {self.weights.shape}")
        if not (np.isfinite(self.weights).all() and np.isfinite(self.bias)):
            raise ValueError("policy parameters must be finite")

    def copy(self) -> "LinearPolicy":
        return LinearPolicy(self.weights.copy(), float(self.bias), dict(self.metadata))


def zero_policy() -> LinearPolicy:
    return LinearPolicy(np.zeros(2), 0.0)


@dataclass(frozen=True)
class TrainConfig:
    episodes: int = 500
    steps_per_episode: Optional[int] = None  # None: twice the vertex count
    learning_rate: float = 1e-3
    discount: float = 0.95
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_decay_steps: Optional[int] = None  # None: half the training steps
    replay_capacity: int = 5000
    batch_size: int = 64
    seed: int = 0
    validation_count: int = 50
    validation_interval: int = 50
    validation_episodes: int = 3

    def __post_init__(self):
        if self.episodes < 1:
            raise ValueError("episodes must be >= 1")
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be >= 0")
        if not 0.0 <= self.discount <= 1.0:
            raise ValueError("discount must be in [0, 1]")
        for eps in (self.epsilon_start, self.epsilon_end):
            if not 0.0 <= eps <= 1.0:
                raise ValueError("epsilon must be in [0, 1]")
        if self.batch_size < 1 or self.replay_capacity < 1:
            raise ValueError("replay_capacity and batch_size must be >= 1")


def initial_gain_scale(state: CutState) -> float:
    """Episode-wide gain normalizer: the largest |gain| at the start."""
    if state.graph.n == 0:
        return GAIN_SCALE_FLOOR
    return max(GAIN_SCALE_FLOOR, float(np.abs(state.gain).max()))


def features(state: CutState, gain_scale: float, horizon: int) -> np.ndarray:
    """Per-vertex (scaled gain, scaled time since flip), shape (n, 2).

    Never-flipped vertices count as maximally stale (time feature 1).
    """
    g = state.gain / gain_scale
    age = (state.step - state.last_flip_step) / max(1, horizon)
    t = np.where(state.last_flip_step < 0, 1.0, np.minimum(1.0, age))
    return np.stack([g, t], axis=1)


def q_values(policy: LinearPolicy, feats: np.ndarray) -> np.ndarray:
    return feats @ policy.weights + policy.bias


def select_action(
    policy: LinearPolicy, feats: np.ndarray, epsilon: float, rng: np.random.Generator
) -> int:
    """Epsilon-greedy over per-vertex Q values; greedy ties go to lowest id."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    n = feats.shape[0]
    if epsilon > 0 and rng.random() < epsilon:
        return int(rng.integers(n))
    return int(np.argmax(q_values(policy, feats)))


def reward(
    prev_best: int, new_best: int, is_new_local_opt: bool, n: int, eta: Optional[float] = None
) -> float:
    """Improvement of the episode best, scaled by n, plus a small bonus for
    reaching a previously unseen local optimum when nothing improved."""
    if new_best < prev_best:
        raise ValueError("episode best cannot decrease")
    if eta is None:
        eta = 1.0 / (10 * n)
    r = (new_best - prev_best) / n
    if is_new_local_opt and new_best == prev_best:
        r += eta
    return r


def td_update(
    policy: LinearPolicy, x: np.ndarray, target: float, learning_rate: float
) -> Tuple[np.ndarray, float]:
    """Semi-gradient step toward a fixed target for a single feature vector.

    Returns the parameter deltas (not yet applied): alpha * (y - Q) * (x, 1).
    """
    q = float(x @ policy.weights + policy.bias)
    td = target - q
    return learning_rate * td * np.asarray(x, dtype=np.float64), learning_rate * td


class _Replay:
    """Fixed-capacity ring buffer of (x_sa, reward, next_features)."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.items: List[tuple] = []
        self.cursor = 0

    def push(self, item) -> None:
        if len(self.items) < self.capacity:
            self.items.append(item)
        else:
            self.items[self.cursor] = item
            self.cursor = (self.cursor + 1) % self.capacity

    def __len__(self):
        return len(self.items)

    def sample(self, rng: np.random.Generator, size: int) -> list:
        idx = rng.integers(len(self.items), size=size)
        return [self.items[i] for i in idx]


def greedy_rollout(
    policy: LinearPolicy, graph: Graph, seed: int, steps: int
) -> SolveOutcome:
    """One greedy (epsilon = 0) episode from a seeded random assignment."""
    rng = np.random.default_rng(seed)
    state = CutState(graph, rng.integers(0, 2, graph.n).astype(np.int8))
    scale = initial_gain_scale(state)
    best_value = state.cut_value
    best_side = state.copy_side()
    trajectory = [(0, best_value)]
    for _ in range(steps):
        feats = features(state, scale, steps)
        state.flip(select_action(policy, feats, 0.0, rng))
        if state.cut_value > best_value:
            best_value = state.cut_value
            best_side = state.copy_side()
            trajectory.append((state.step, best_value))
    return SolveOutcome(best_value, best_side, state.step, trajectory)


def softtabu_solve(
    policy: LinearPolicy, graph: Graph, episodes: int, steps: int, seed: int
) -> SolveOutcome:
    """Best outcome over seeded greedy rollouts (seeds seed, seed+1, ...)."""
    if episodes < 1:
        raise ValueError("episodes must be >= 1")
    best: Optional[SolveOutcome] = None
    total_steps = 0
    for i in range(episodes):
        out = greedy_rollout(policy, graph, seed + i, steps)
        total_steps += out.steps_taken
        if best is None or out.best_value > best.best_value:
            best = out
    return SolveOutcome(best.best_value, best.best_side, total_steps, best.trajectory)


def _epsilon(config: TrainConfig, global_step: int, decay_steps: int) -> float:
    if decay_steps <= 0 or global_step >= decay_steps:
        return config.epsilon_end
    frac = global_step / decay_steps
    return config.epsilon_start + frac * (config.epsilon_end - config.epsilon_start)


def _reference_values(graphs: Sequence[Graph], seed: int) -> List[int]:
    """Anchor values for validation ratios: a short tabu run per graph."""
    refs = []
    for i, g in enumerate(graphs):
        best = 0
        for j in range(5):
            cfg = SolverConfig("tabu", tenure=20, seed=seed + 97 * i + j, max_steps=2 * g.n)
            best = max(best, tabu_search(g, cfg).best_value)
        refs.append(best)
    return refs


def _validate(
    policy: LinearPolicy, graphs: Sequence[Graph], refs: Sequence[int], config: TrainConfig
) -> float:
    ratios = []
    for i, (g, ref) in enumerate(zip(graphs, refs)):
        if ref <= 0:
            continue
        out = softtabu_solve(
            policy, g, config.validation_episodes, 2 * g.n, seed=31_000 + 1_000 * i
        )
        ratios.append(out.best_value / ref)
    return float(np.mean(ratios)) if ratios else float("-inf")


def train(distribution: DistributionSpec, config: TrainConfig) -> LinearPolicy:
    """Q-learning over freshly generated graphs; returns the policy snapshot
    with the best validation score seen during training."""
    rng_env = np.random.default_rng([config.seed & (2**64 - 1), 11])
    rng_replay = np.random.default_rng([config.seed & (2**64 - 1), 13])

    val_graphs = generate_batch(
        distribution, config.validation_count, base_seed=config.seed + _VALIDATION_SEED_OFFSET
    )
    val_refs = _reference_values(val_graphs, config.seed + _REFERENCE_SEED_OFFSET)

    policy = zero_policy()
    replay = _Replay(config.replay_capacity)

    probe = generate(replace(distribution, seed=config.seed))
    probe_steps = config.steps_per_episode or 2 * probe.n
    decay_steps = (
        config.epsilon_decay_steps
        if config.epsilon_decay_steps is not None
        else (config.episodes * probe_steps) // 2
    )

    best_score = float("-inf")
    best_policy = policy.copy()
    history = []
    global_step = 0

    for episode in range(config.episodes):
        graph = generate(replace(distribution, seed=config.seed + episode))
        steps = config.steps_per_episode or 2 * graph.n
        state = CutState(graph, rng_env.integers(0, 2, graph.n).astype(np.int8))
        scale = initial_gain_scale(state)
        feats = features(state, scale, steps)
        episode_best = state.cut_value
        seen_local = set()
        if graph.n and bool((state.gain < 0).all()):
            seen_local.add(state.side.tobytes())

        for t in range(steps):
            eps = _epsilon(config, global_step, decay_steps)
            action = select_action(policy, feats, eps, rng_env)
            x_sa = feats[action].copy()

            prev_best = episode_best
            state.flip(action)
            episode_best = max(episode_best, state.cut_value)
            is_local = bool((state.gain < 0).all())
            key = state.side.tobytes()
            is_new_local = is_local and key not in seen_local
            if is_local:
                seen_local.add(key)
            r = reward(prev_best, episode_best, is_new_local, graph.n)

            feats = features(state, scale, steps)
            replay.push((x_sa, r, feats))
            global_step += 1

            if len(replay) >= config.batch_size and config.learning_rate > 0:
                dw = np.zeros(2)
                db = 0.0
                for x, rew, nfeats in replay.sample(rng_replay, config.batch_size):
                    bootstrap = float(np.max(q_values(policy, nfeats)))
                    target = rew + config.discount * bootstrap
                    step_w, step_b = td_update(policy, x, target, config.learning_rate)
                    dw += step_w
                    db += step_b
                policy.weights = policy.weights + dw / config.batch_size
                policy.bias = policy.bias + db / config.batch_size
                if not (np.isfinite(policy.weights).all() and np.isfinite(policy.bias)):
                    raise TrainingDivergedError(global_step)

        if (episode + 1) % config.validation_interval == 0 or episode == config.episodes - 1:
            score = _validate(policy, val_graphs, val_refs, config)
            history.append((episode + 1, score, policy.weights.tolist(), policy.bias))
            if score > best_score:
                best_score = score
                best_policy = policy.copy()

    best_policy.metadata = {
        "trained_on": distribution.family,
        "episodes": config.episodes,
        "validation_score": best_score,
        "validation_history": history,
        "seed": config.seed,
    }
    return best_policy


def save_policy(policy: LinearPolicy, path) -> None:
    doc = {
        "format_version": POLICY_FORMAT_VERSION,
        "weights": policy.weights.tolist(),
        "bias": float(policy.bias),
        "normalization": {"gain_scale_floor": GAIN_SCALE_FLOOR, "time_cap": 1.0},
        "metadata": policy.metadata,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_policy(path) -> LinearPolicy:
    with open(path) as fh:
        doc = json.load(fh)
    version = doc.get("format_version")
    if version != POLICY_FORMAT_VERSION:
        raise ValueError(f"unsupported policy format version {version!r}")
    return LinearPolicy(np.asarray(doc["weights"]), float(doc["bias"]), doc.get("metadata", {}))
