"""Weighted undirected graphs and incremental cut bookkeeping.

Weights are integers throughout, so cached values can be checked against
from-scratch recomputation with exact equality.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

import numpy as np

BRUTE_FORCE_MAX_VERTICES = 24


class CapacityError(ValueError):
    """Raised when an exact computation is asked for an instance too large for it."""


class Graph:
    """Immutable undirected graph with integer edge weights.

    Edges are stored once with ``u < v``, sorted by ``(u, v)``, and mirrored
    into per-vertex adjacency arrays. Self-loops and duplicate pairs are
    rejected; zero-weight edges are treated as non-edges and dropped.
    """

    __slots__ = ("n", "edges", "name", "_eu", "_ev", "_ew", "_nbr", "_nw")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int, int]], name: str = ""):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = int(n)
        self.name = name

        seen = set()
        normalized = []
        for u, v, w in edges:
            u, v = int(u), int(v)
            if isinstance(w, float) and not float(w).is_integer():
                raise ValueError(f"edge ({u}, {v}) has non-integer weight {w!r}")
            w = int(w)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            if w == 0:
                continue
            normalized.append((u, v, w))
        normalized.sort()
        self.edges = normalized

        m = len(normalized)
        self._eu = np.fromiter((e[0] for e in normalized), dtype=np.int64, count=m)
        self._ev = np.fromiter((e[1] for e in normalized), dtype=np.int64, count=m)
        self._ew = np.fromiter((e[2] for e in normalized), dtype=np.int64, count=m)

        nbr_lists: list[list[int]] = [[] for _ in range(self.n)]
        w_lists: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, w in normalized:
            nbr_lists[u].append(v)
            w_lists[u].append(w)
            nbr_lists[v].append(u)
            w_lists[v].append(w)
        self._nbr = [np.asarray(a, dtype=np.int64) for a in nbr_lists]
        self._nw = [np.asarray(a, dtype=np.int64) for a in w_lists]

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> Tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and corresponding edge weights of ``v``."""
        return self._nbr[v], self._nw[v]

    def degree(self, v: int) -> int:
        return len(self._nbr[v])

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self._eu, 1)
        np.add.at(deg, self._ev, 1)
        return deg

    def total_weight(self) -> int:
        return int(self._ew.sum())

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"Graph(n={self.n}, m={self.m}{label})"


def _as_side_array(graph: Graph, side: Sequence[int]) -> np.ndarray:
    arr = np.asarray(side)
    if arr.shape != (graph.n,):
        raise ValueError(f"assignment length {arr.shape} does not match n={graph.n}")
    arr = arr.astype(np.int8)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("assignment entries must be 0 or 1")
    return arr


def cut_value(graph: Graph, side: Sequence[int]) -> int:
    """Total weight of edges with endpoints on opposite sides."""
    arr = _as_side_array(graph, side)
    if graph.m == 0:
        return 0
    crossing = arr[graph._eu] != arr[graph._ev]
    return int(graph._ew[crossing].sum())


def _gains_from_scratch(graph: Graph, side: np.ndarray) -> np.ndarray:
    # gain[x] = sum over neighbors u of w(x,u) * (+1 if same side else -1):
    # flipping x turns same-side edges into crossings and vice versa.
    gain = np.zeros(graph.n, dtype=np.int64)
    if graph.m:
        sgn = np.where(side[graph._eu] == side[graph._ev], graph._ew, -graph._ew)
        np.add.at(gain, graph._eu, sgn)
        np.add.at(gain, graph._ev, sgn)
    return gain


class CutState:
    """Mutable spin assignment with cached cut value and per-vertex flip gains.

    ``gain[v]`` is the exact change in cut value if ``v`` were flipped.
    ``last_flip_step[v]`` is the step index of the most recent flip of ``v``
    (-1 if never flipped); ``step`` counts flips applied so far.
    """

    __slots__ = ("graph", "side", "cut_value", "gain", "last_flip_step", "step")

    def __init__(self, graph: Graph, side: Sequence[int]):
        self.graph = graph
        self.side = _as_side_array(graph, side).copy()
        self.cut_value = cut_value(graph, self.side)
        self.gain = _gains_from_scratch(graph, self.side)
        self.last_flip_step = np.full(graph.n, -1, dtype=np.int64)
        self.step = 0

    def flip(self, v: int) -> None:
        """Toggle ``v``'s side, updating cut value and gains in O(deg(v))."""
        if not 0 <= v < self.graph.n:
            raise ValueError(f"vertex {v} out of range for n={self.graph.n}")
        nbr, w = self.graph.neighbors(v)
        if len(nbr):
            same = self.side[nbr] == self.side[v]
            self.gain[nbr] += np.where(same, -2 * w, 2 * w)
        self.cut_value += int(self.gain[v])
        self.gain[v] = -self.gain[v]
        self.side[v] ^= 1
        self.last_flip_step[v] = self.step
        self.step += 1

    def copy_side(self) -> np.ndarray:
        return self.side.copy()

    def check_consistency(self) -> None:
        """Assert cached cut value and gains equal from-scratch recomputation."""
        expected_cut = cut_value(self.graph, self.side)
        if self.cut_value != expected_cut:
            raise AssertionError(f"cached cut {self.cut_value} != recomputed {expected_cut}")
        expected_gain = _gains_from_scratch(self.graph, self.side)
        if not np.array_equal(self.gain, expected_gain):
            raise AssertionError("cached gains diverged from recomputation")


def brute_force_optimum(graph: Graph) -> Tuple[int, np.ndarray]:
    """Exact maximum cut by enumeration, n <= 24.

    Vertex 0 is fixed on side 0 (complement symmetry halves the search).
    Returns the optimal value and the lexicographically first optimal
    assignment under that convention.
    """
    n = graph.n
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise CapacityError(f"brute force supports n <= {BRUTE_FORCE_MAX_VERTICES}, got {n}")
    if n == 0:
        return 0, np.zeros(0, dtype=np.int8)

    total = 1 << (n - 1)
    block = min(total, 1 << 16)
    edges = graph.edges
    best_val = None
    best_code = 0
    for start in range(0, total, block):
        codes = np.arange(start, min(start + block, total), dtype=np.uint64)
        cut = np.zeros(len(codes), dtype=np.int64)
        for u, v, w in edges:
            # vertex j's side is bit j-1 of the code; vertex 0 is always 0
            bu = (codes >> np.uint64(u - 1)) & np.uint64(1) if u > 0 else 0
            bv = (codes >> np.uint64(v - 1)) & np.uint64(1)
            cut += np.where(bu != bv, w, 0)
        i = int(np.argmax(cut))
        if best_val is None or cut[i] > best_val:
            best_val = int(cut[i])
            best_code = start + i
    side = np.zeros(n, dtype=np.int8)
    for j in range(1, n):
        side[j] = (best_code >> (j - 1)) & 1
    return int(best_val), side
