"""Grid search for solver parameters and the bundled tuned defaults."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .evaluation import ProtocolConfig, bench_solver, benchmark
from .graph import Graph
from .registry import BestKnownRegistry
from .solvers import SolverConfig

PARAMETERS = ("tenure", "tau")


@dataclass(frozen=True)
class GridSpec:
    parameter: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"unknown parameter {self.parameter!r}; expected one of {PARAMETERS}")
        if self.start > self.stop:
            raise ValueError("start must be <= stop")
        if not self.step > 0:
            raise ValueError("step must be > 0")


def grid_points(grid: GridSpec) -> list:
    """start, start+step, ... up to stop inclusive (float-tolerant)."""
    count = math.floor((grid.stop - grid.start) / grid.step + 1e-6) + 1
    return [round(grid.start + i * grid.step, 10) for i in range(count)]


def _config_for(solver_kind: str, parameter: str, value: float) -> SolverConfig:
    if parameter == "tenure":
        if solver_kind != "tabu":
            raise ValueError("tenure grids apply to the tabu solver")
        return SolverConfig("tabu", tenure=int(round(value)))
    if solver_kind != "eo":
        raise ValueError("tau grids apply to the eo solver")
    return SolverConfig("eo", tau=value)


def grid_search(
    solver_kind: str,
    grid: GridSpec,
    validation: Sequence[Graph],
    protocol: ProtocolConfig,
    registry: Optional[BestKnownRegistry] = None,
) -> Tuple[float, Dict[float, Tuple[float, float]]]:
    """Evaluate every grid point on the validation set under one shared
    best-found normalization; returns (best parameter, full table).

    Ties go to the smaller parameter.
    """
    if not validation:
        raise ValueError("validation set is empty")
    points = grid_points(grid)
    if not points:
        raise ValueError("empty grid")

    solvers = [
        bench_solver(_config_for(solver_kind, grid.parameter, p), name=f"{grid.parameter}={p:g}")
        for p in points
    ]
    report = benchmark(solvers, validation, protocol, registry, distribution="validation")

    table: Dict[float, Tuple[float, float]] = {}
    best_param = None
    best_mean = None
    for point, group in zip(points, report.groups):
        table[point] = (group.mean_ratio, group.std_ratio)
        if group.mean_ratio is not None and (best_mean is None or group.mean_ratio > best_mean):
            best_mean = group.mean_ratio
            best_param = point
    if best_param is None:
        raise ValueError("no grid point produced a defined ratio")
    return best_param, table


def tuning_table_csv(table: Dict[float, Tuple[float, float]]) -> str:
    lines = ["param,mean_ratio,std_ratio"]
    for param in sorted(table):
        mean, std = table[param]
        mean_s = "" if mean is None else f"{mean:.6f}"
        std_s = "" if std is None else f"{std:.6f}"
        lines.append(f"{param:g},{mean_s},{std_s}")
    return "\n".join(lines) + "\n"


class NoDefaultError(KeyError):
    """No tuned default exists for the requested family/scheme."""


# tuned (tenure, tau) defaults, keyed by family, weighted flag, and nominal
# size; families measured at two sizes need n to disambiguate
_DEFAULT_ROWS = (
    ("gset_er", False, 800, 80, 1.4),
    ("gset_skew", False, 800, 90, 1.4),
    ("ba", False, 800, 110, 1.3),
    ("ws", False, 800, 140, 1.4),
    ("hk", False, 800, 100, 1.4),
    ("phase_transition", False, 150, 20, 1.8),
    ("gset_er", True, 800, 30, 1.7),
    ("gset_skew", True, 800, 90, 1.4),
    ("gset_toroidal", True, 800, 100, 1.4),
    ("ba", True, 800, 120, 1.2),
    ("ws", True, 800, 110, 1.3),
    ("hk", True, 800, 110, 1.2),
    ("er", True, 200, 10, 1.9),
    ("ba", True, 200, 20, 1.6),
    ("sk", True, 85, 20, 1.8),
    ("physics_regular", True, 125, 20, 1.4),
)


def default_params(
    family: str, weight_scheme: str, n: Optional[int] = None
) -> Tuple[int, float]:
    """Tuned (tenure, tau) for a family/weight-scheme combination.

    ``n`` picks between size variants when a family was tuned at more than
    one size (nearest nominal size wins).
    """
    weighted = weight_scheme in ("signed0pm1", "signedpm1")
    rows = [row for row in _DEFAULT_ROWS if row[0] == family and row[1] == weighted]
    if not rows:
        raise NoDefaultError(
            f"no tuned default for family={family!r} "
            f"({'weighted' if weighted else 'unweighted'}); run a grid search"
        )
    if len(rows) == 1:
        row = rows[0]
    else:
        if n is None:
            sizes = sorted(r[2] for r in rows)
            raise NoDefaultError(
                f"family {family!r} has defaults at sizes {sizes}; pass n to disambiguate"
            )
        row = min(rows, key=lambda r: abs(r[2] - n))
    return row[3], row[4]
