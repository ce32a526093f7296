"""Seeded random-graph generators for the benchmark families.

Every generator is a pure function of its :class:`DistributionSpec`: the
same spec (seed included) always yields the same graph. Randomness is split
into independent streams (size, structure, weights) derived from the seed,
so the edge structure of a graph does not change when only the weight
scheme differs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Tuple

import numpy as np

from .graph import Graph

FAMILIES = (
    "er",
    "ba",
    "hk",
    "ws",
    "gset_er",
    "gset_skew",
    "gset_toroidal",
    "sk",
    "phase_transition",
    "physics_regular",
)

WEIGHT_SCHEMES = ("unweighted01", "signed0pm1", "signedpm1")

_SCHEME_TAGS = {"unweighted01": "w01", "signed0pm1": "w0pm1", "signedpm1": "wpm1"}

# stream tags fed into SeedSequence alongside the user seed
_SIZE_STREAM = 0
_STRUCTURE_STREAM = 1
_WEIGHT_STREAM = 2

_MASK64 = (1 << 64) - 1

PHYSICS_REGULARITY = 6

# canonical sizes/parameters for each family; overridable per spec
_FAMILY_DEFAULTS: dict = {
    "er": dict(n=200, params={"p": 0.15}),
    "ba": dict(n=800, params={"m": 4}),
    "hk": dict(n=800, params={"m": 4, "p": 0.10}),
    "ws": dict(n=800, params={"k": 4, "p": 0.15}),
    "gset_er": dict(n=800, params={"p": 0.06}),
    "gset_skew": dict(n=800, params={"d": 0.99}),
    "gset_toroidal": dict(n=800, params={}),
    "sk": dict(n_range=(70, 100), params={}),
    "phase_transition": dict(n_range=(100, 200), params={"p": 0.5}),
    "physics_regular": dict(n=125, params={}),
}


@dataclass(frozen=True)
class DistributionSpec:
    """A reproducible recipe for one graph distribution.

    ``n`` fixes the size; ``n_range`` draws it uniformly (inclusive) from
    the seed's size stream. When both are omitted the family's canonical
    size applies.
    """

    family: str
    n: Optional[int] = None
    n_range: Optional[Tuple[int, int]] = None
    params: Mapping = field(default_factory=dict)
    weight_scheme: str = "unweighted01"
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.weight_scheme not in WEIGHT_SCHEMES:
            raise ValueError(
                f"unknown weight scheme {self.weight_scheme!r}; expected one of {WEIGHT_SCHEMES}"
            )
        if self.n is not None and self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.n_range is not None:
            lo, hi = self.n_range
            if not (2 <= lo <= hi):
                raise ValueError(f"invalid size range {self.n_range}")

    def merged_params(self) -> dict:
        merged = dict(_FAMILY_DEFAULTS[self.family]["params"])
        merged.update(self.params)
        return merged


def _stream(seed: int, tag: int) -> np.random.Generator:
    return np.random.default_rng([seed & _MASK64, tag])


def _resolve_size(spec: DistributionSpec) -> int:
    if spec.n is not None:
        return spec.n
    rng = _stream(spec.seed, _SIZE_STREAM)
    if spec.n_range is not None:
        lo, hi = spec.n_range
    else:
        defaults = _FAMILY_DEFAULTS[spec.family]
        if "n_range" in defaults:
            lo, hi = defaults["n_range"]
        else:
            return defaults["n"]
    return int(rng.integers(lo, hi + 1))


def _check_probability(name: str, value) -> float:
    p = float(value)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")
    return p


def _pair_bernoulli(n: int, probs, rng: np.random.Generator) -> list:
    """Draw each (u, v), u < v, independently; probs is scalar or per-pair."""
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < probs
    return list(zip(iu[keep].tolist(), iv[keep].tolist()))


def _er_structure(n: int, p: float, rng: np.random.Generator) -> list:
    return _pair_bernoulli(n, p, rng)


def _pick_attachment_target(rng, existing_count, repeated, exclude):
    """One degree-preferential target outside ``exclude``, with rejection."""
    for _ in range(64):
        if repeated:
            cand = repeated[int(rng.integers(len(repeated)))]
        else:
            cand = int(rng.integers(existing_count))
        if cand not in exclude:
            return cand
    # pathological rejection streak: fall back to a uniform unused vertex
    pool = [u for u in range(existing_count) if u not in exclude]
    return pool[int(rng.integers(len(pool)))]


def _ba_structure(n: int, m: int, rng: np.random.Generator) -> list:
    if not 1 <= m < n:
        raise ValueError(f"ba requires 1 <= m < n, got m={m}, n={n}")
    edges = []
    repeated: list = []  # one entry per edge endpoint; sampling it is degree-proportional
    for v in range(m, n):
        attached = {v}
        targets = []
        for _ in range(m):
            u = _pick_attachment_target(rng, v, repeated, attached)
            attached.add(u)
            targets.append(u)
            edges.append((min(u, v), max(u, v)))
        for u in targets:
            repeated.append(u)
            repeated.append(v)
    return edges


def _hk_structure(n: int, m: int, p: float, rng: np.random.Generator) -> list:
    """Preferential attachment plus a chance of closing a triangle after each edge."""
    if not 1 <= m < n:
        raise ValueError(f"hk requires 1 <= m < n, got m={m}, n={n}")
    edges = []
    neighbors: list = [[] for _ in range(n)]
    repeated: list = []

    def add_edge(a, b):
        edges.append((min(a, b), max(a, b)))
        neighbors[a].append(b)
        neighbors[b].append(a)
        repeated.append(a)
        repeated.append(b)

    for v in range(m, n):
        attached = {v}
        for _ in range(m):
            u = _pick_attachment_target(rng, v, repeated, attached)
            attached.add(u)
            add_edge(u, v)
            if rng.random() < p and neighbors[u]:
                w = neighbors[u][int(rng.integers(len(neighbors[u])))]
                if w not in attached:
                    attached.add(w)
                    add_edge(v, w)
    return edges


def _ws_structure(n: int, k: int, p: float, rng: np.random.Generator) -> list:
    if k % 2 != 0 or not 0 < k < n:
        raise ValueError(f"ws requires even k with 0 < k < n, got k={k}, n={n}")
    edges = []
    edge_set = set()
    for j in range(1, k // 2 + 1):
        for i in range(n):
            a, b = i, (i + j) % n
            key = (min(a, b), max(a, b))
            if key not in edge_set:
                edges.append(key)
                edge_set.add(key)
    # each lattice edge is replaced, with probability p, by a uniform new pair
    for idx in range(len(edges)):
        if rng.random() >= p:
            continue
        old = edges[idx]
        for _ in range(1000):
            a = int(rng.integers(n))
            b = int(rng.integers(n))
            if a == b:
                continue
            key = (min(a, b), max(a, b))
            if key not in edge_set:
                edge_set.discard(old)
                edge_set.add(key)
                edges[idx] = key
                break
    return edges


def _gset_skew_structure(n: int, d: float, rng: np.random.Generator) -> list:
    """Index-skewed connectivity: P(edge i<j) = d * exp(-(j-i)/(n/8))."""
    iu, iv = np.triu_indices(n, k=1)
    probs = d * np.exp(-(iv - iu) / (n / 8.0))
    keep = rng.random(len(iu)) < probs
    return list(zip(iu[keep].tolist(), iv[keep].tolist()))


def toroidal_shape(n: int) -> Tuple[int, int]:
    """Torus grid a x b with a*b = n and a the divisor of n closest to sqrt(n)."""
    divisors = [a for a in range(1, n + 1) if n % a == 0]
    root = np.sqrt(n)
    a = min(divisors, key=lambda a: (abs(a - root), a))
    b = n // a
    return a, b


def _gset_toroidal_structure(n: int, rng: np.random.Generator) -> list:
    a, b = toroidal_shape(n)
    if a < 3 or b < 3:
        raise ValueError(f"n={n} factors into a {a}x{b} grid; torus needs both sides >= 3")
    edges = []
    for r in range(a):
        for c in range(b):
            v = r * b + c
            right = r * b + (c + 1) % b
            down = ((r + 1) % a) * b + c
            edges.append((min(v, right), max(v, right)))
            edges.append((min(v, down), max(v, down)))
    return edges


def _complete_structure(n: int) -> list:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _regular_structure(n: int, degree: int, rng: np.random.Generator) -> list:
    """Random regular graph via stub pairing with double-swap repair."""
    if n * degree % 2 != 0 or degree >= n:
        raise ValueError(f"cannot build {degree}-regular graph on {n} vertices")
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(200):
        perm = rng.permutation(stubs)
        pairs = [(int(perm[i]), int(perm[i + 1])) for i in range(0, len(perm), 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs]
        if _repair_pairing(pairs, rng):
            return pairs
    raise RuntimeError(f"failed to realize a {degree}-regular graph on {n} vertices")


def _repair_pairing(pairs: list, rng: np.random.Generator, max_swaps: int = 2000) -> bool:
    """Remove self-loops/duplicates by degree-preserving double swaps."""
    counts = Counter(pairs)

    def bad(pair):
        return pair[0] == pair[1] or counts[pair] > 1

    for _ in range(max_swaps):
        bad_idx = [i for i, pr in enumerate(pairs) if bad(pr)]
        if not bad_idx:
            return True
        i = bad_idx[int(rng.integers(len(bad_idx)))]
        j = int(rng.integers(len(pairs)))
        if i == j:
            continue
        (a, b), (c, d) = pairs[i], pairs[j]
        new1 = (min(a, c), max(a, c))
        new2 = (min(b, d), max(b, d))
        # accept only swaps whose replacements collide with nothing
        if new1[0] == new1[1] or new2[0] == new2[1] or new1 == new2:
            continue
        if counts[new1] == 0 and counts[new2] == 0:
            counts[pairs[i]] -= 1
            counts[pairs[j]] -= 1
            counts[new1] += 1
            counts[new2] += 1
            pairs[i] = new1
            pairs[j] = new2
    return False


def _apply_weights(structure: list, scheme: str, rng: np.random.Generator) -> list:
    count = len(structure)
    if scheme == "unweighted01":
        weights = np.ones(count, dtype=np.int64)
    elif scheme == "signedpm1":
        weights = rng.integers(0, 2, count) * 2 - 1
    elif scheme == "signed0pm1":
        weights = rng.integers(-1, 2, count)  # zeros dropped at Graph construction
    else:  # pragma: no cover - validated upstream
        raise ValueError(scheme)
    return [(u, v, int(w)) for (u, v), w in zip(structure, weights) if w != 0]


def instance_name(spec: DistributionSpec, n: int) -> str:
    parts = [spec.family, f"n{n}"]
    for key in sorted(spec.merged_params()):
        parts.append(f"{key}{spec.merged_params()[key]:g}")
    parts.append(_SCHEME_TAGS[spec.weight_scheme])
    parts.append(f"s{spec.seed & _MASK64}")
    return "-".join(parts)


def generate(spec: DistributionSpec) -> Graph:
    """Draw one graph from the spec's family, deterministically in the seed."""
    n = _resolve_size(spec)
    params = spec.merged_params()
    structure_rng = _stream(spec.seed, _STRUCTURE_STREAM)
    weight_rng = _stream(spec.seed, _WEIGHT_STREAM)

    family = spec.family
    if family in ("er", "gset_er"):
        p = _check_probability("p", params["p"])
        structure = _er_structure(n, p, structure_rng)
    elif family == "phase_transition":
        p = _check_probability("p", params.get("p", 0.5))
        structure = _er_structure(n, p, structure_rng)
    elif family == "ba":
        structure = _ba_structure(n, int(params["m"]), structure_rng)
    elif family == "hk":
        structure = _hk_structure(
            n, int(params["m"]), _check_probability("p", params["p"]), structure_rng
        )
    elif family == "ws":
        structure = _ws_structure(
            n, int(params["k"]), _check_probability("p", params["p"]), structure_rng
        )
    elif family == "gset_skew":
        d = _check_probability("d", params["d"])
        structure = _gset_skew_structure(n, d, structure_rng)
    elif family == "gset_toroidal":
        structure = _gset_toroidal_structure(n, structure_rng)
    elif family == "sk":
        structure = _complete_structure(n)
    elif family == "physics_regular":
        structure = _regular_structure(n, PHYSICS_REGULARITY, structure_rng)
    else:  # pragma: no cover - validated in __post_init__
        raise ValueError(family)

    weighted_edges = _apply_weights(structure, spec.weight_scheme, weight_rng)
    return Graph(n, weighted_edges, name=instance_name(spec, n))


def generate_batch(spec: DistributionSpec, count: int, base_seed: int) -> list:
    """Graphs for seeds base_seed, base_seed+1, ... (deterministic order)."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return [generate(replace(spec, seed=base_seed + i)) for i in range(count)]
