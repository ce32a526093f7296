"""Slow, independent reference implementations used as test oracles.

These deliberately avoid the incremental machinery under test: everything
is recomputed from first principles (edge scans, full enumeration).
"""

from __future__ import annotations

import itertools

import numpy as np

from cutbench.graph import Graph


def naive_cut_value(edges, side) -> int:
    total = 0
    for u, v, w in edges:
        if side[u] != side[v]:
            total += w
    return total


def naive_gains(n, edges, side) -> list:
    base = naive_cut_value(edges, side)
    gains = []
    for v in range(n):
        flipped = list(side)
        flipped[v] ^= 1
        gains.append(naive_cut_value(edges, flipped) - base)
    return gains


def enumerate_optimum(n, edges) -> int:
    """Exact maximum over all 2^n assignments; independent of the package."""
    best = None
    for bits in itertools.product((0, 1), repeat=n):
        val = naive_cut_value(edges, bits)
        if best is None or val > best:
            best = val
    return best


def random_graph(rng: np.random.Generator, n: int, p: float = 0.3, weighted: bool = True) -> Graph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                w = int(rng.integers(-3, 4)) if weighted else 1
                if w != 0:
                    edges.append((u, v, w))
    return Graph(n, edges)
