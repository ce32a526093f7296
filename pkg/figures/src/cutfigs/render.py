"""Render distribution plots and pivots from a results document.

Every image gets a sidecar CSV holding exactly the numbers that were drawn,
so re-renders can be diffed without image comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import load_results

PLOT_KINDS = ("violin", "box", "heatmap", "timing")

FIGSIZE = (8.0, 5.0)
DPI = 150


class NoDataError(ValueError):
    """The request selects nothing to plot."""


@dataclass(frozen=True)
class PlotRequest:
    results: Path
    kind: str
    out_dir: Path
    solvers: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.kind not in PLOT_KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}; expected one of {PLOT_KINDS}")


def _slug(text: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in text)


def _selected_groups(doc: dict, solvers: Optional[Sequence[str]]) -> List[dict]:
    groups = doc["groups"]
    if solvers is not None:
        groups = [g for g in groups if g["solver"] in solvers]
    if not groups:
        raise NoDataError("no solver groups match the request")
    return groups


def _distribution_order(groups: Sequence[dict]) -> List[str]:
    seen = []
    for g in groups:
        if g["distribution"] not in seen:
            seen.append(g["distribution"])
    return seen


def _ratio_rows(groups: Sequence[dict], distribution: str) -> List[tuple]:
    """(solver, instance, ratio) rows in document order, excluded dropped."""
    rows = []
    for g in groups:
        if g["distribution"] != distribution:
            continue
        for record in g["instances"]:
            if record.get("excluded") or record["ratio"] is None:
                continue
            rows.append((g["solver"], record["instance"], record["ratio"]))
    return rows


def _write_csv(path: Path, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(str(x) for x in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _render_distribution_plot(
    groups: List[dict], distribution: str, kind: str, out_dir: Path
) -> Path:
    rows = _ratio_rows(groups, distribution)
    if not rows:
        raise NoDataError(f"no plottable ratios for distribution {distribution!r}")
    solvers = []
    for solver, _, _ in rows:
        if solver not in solvers:
            solvers.append(solver)
    series = [[r for s, _, r in rows if s == solver] for solver in solvers]

    fig, ax = plt.subplots(figsize=FIGSIZE)
    positions = np.arange(1, len(solvers) + 1)
    if kind == "violin":
        ax.violinplot(series, positions=positions, showmedians=True)
    else:
        ax.boxplot(series, positions=positions)
    ax.set_xticks(positions)
    ax.set_xticklabels(solvers)
    ax.set_ylabel("approximation ratio")
    ax.set_title(distribution)
    ax.grid(True, axis="y", alpha=0.3)

    image = out_dir / f"{kind}_{_slug(distribution)}.png"
    fig.savefig(image, dpi=DPI)
    plt.close(fig)
    _write_csv(
        image.with_suffix(".csv"),
        "distribution,solver,instance,ratio",
        [(distribution, s, i, r) for s, i, r in rows],
    )
    return image


def _render_heatmap(groups: List[dict], out_dir: Path) -> Path:
    cells = [
        (g["train_distribution"], g["distribution"], g["mean_ratio"])
        for g in groups
        if g.get("train_distribution") and g["mean_ratio"] is not None
    ]
    if not cells:
        raise NoDataError("no groups carry a train_distribution; nothing to pivot")
    train_labels = []
    test_labels = []
    for train, test, _ in cells:
        if train not in train_labels:
            train_labels.append(train)
        if test not in test_labels:
            test_labels.append(test)
    matrix = np.full((len(train_labels), len(test_labels)), np.nan)
    for train, test, mean in cells:
        matrix[train_labels.index(train), test_labels.index(test)] = mean

    fig, ax = plt.subplots(figsize=FIGSIZE)
    image_data = ax.imshow(matrix, cmap="viridis", aspect="auto")
    ax.set_xticks(range(len(test_labels)))
    ax.set_xticklabels(test_labels, rotation=30, ha="right")
    ax.set_yticks(range(len(train_labels)))
    ax.set_yticklabels(train_labels)
    ax.set_xlabel("evaluated on")
    ax.set_ylabel("trained on")
    ax.set_title("mean approximation ratio")
    for i in range(len(train_labels)):
        for j in range(len(test_labels)):
            if not np.isnan(matrix[i, j]):
                ax.text(j, i, f"{matrix[i, j]:.3f}", ha="center", va="center", color="white")
    fig.colorbar(image_data, ax=ax)

    image = out_dir / "heatmap.png"
    fig.savefig(image, dpi=DPI)
    plt.close(fig)
    _write_csv(
        image.with_suffix(".csv"),
        "train_distribution,test_distribution,mean_ratio",
        cells,
    )
    return image


def _render_timing(groups: List[dict], out_dir: Path) -> List[Path]:
    written = []
    for distribution in _distribution_order(groups):
        bars = [
            (g["solver"], g.get("wall_clock_seconds", 0.0))
            for g in groups
            if g["distribution"] == distribution
        ]
        fig, ax = plt.subplots(figsize=FIGSIZE)
        positions = np.arange(len(bars))
        ax.bar(positions, [w for _, w in bars])
        ax.set_xticks(positions)
        ax.set_xticklabels([s for s, _ in bars])
        ax.set_ylabel("wall-clock seconds")
        ax.set_title(distribution)
        image = out_dir / f"timing_{_slug(distribution)}.png"
        fig.savefig(image, dpi=DPI)
        plt.close(fig)
        _write_csv(
            image.with_suffix(".csv"),
            "distribution,solver,wall_clock_seconds",
            [(distribution, s, w) for s, w in bars],
        )
        written.append(image)
    return written


def render(request: PlotRequest) -> List[Path]:
    """Write images (plus CSV sidecars) under out_dir; returns image paths."""
    doc = load_results(request.results)
    groups = _selected_groups(doc, request.solvers)
    out_dir = Path(request.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if request.kind in ("violin", "box"):
        return [
            _render_distribution_plot(groups, distribution, request.kind, out_dir)
            for distribution in _distribution_order(groups)
        ]
    if request.kind == "heatmap":
        return [_render_heatmap(groups, out_dir)]
    return _render_timing(groups, out_dir)
