"""The results.json wire format: schema, (de)serialization, and tables.

This file format is the only coupling point for downstream consumers
(report tables, external plotting tools), so it is versioned and validated
against a published JSON schema.
"""

from __future__ import annotations

import copy
import json
from datetime import datetime, timezone
from typing import List

import jsonschema

from .evaluation import BenchmarkReport

SCHEMA_VERSION = 1

RESULTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "metadata", "groups"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "metadata": {
            "type": "object",
            "required": ["created_utc", "base_seed"],
            "properties": {
                "created_utc": {"type": "string"},
                "base_seed": {"type": "integer"},
                "episodes": {"type": "integer"},
                "steps_factor": {"type": "number"},
            },
        },
        "groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "solver",
                    "distribution",
                    "mean_ratio",
                    "std_ratio",
                    "wall_clock_seconds",
                    "instances",
                ],
                "properties": {
                    "solver": {"type": "string"},
                    "distribution": {"type": "string"},
                    "train_distribution": {"type": ["string", "null"]},
                    "mean_ratio": {"type": ["number", "null"]},
                    "std_ratio": {"type": ["number", "null"]},
                    "wall_clock_seconds": {"type": "number"},
                    "instances": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["instance", "best_value", "ratio"],
                            "properties": {
                                "instance": {"type": "string"},
                                "best_value": {"type": "integer"},
                                "best_known": {"type": ["integer", "null"]},
                                "ratio": {"type": ["number", "null"]},
                                "excluded": {"type": "boolean"},
                                "episodes": {"type": "integer"},
                                "steps": {"type": "integer"},
                                "timed_out": {"type": "boolean"},
                                "wall_clock_seconds": {"type": "number"},
                            },
                        },
                    },
                },
            },
        },
    },
}

VOLATILE_METADATA_KEYS = ("created_utc",)


def report_to_document(report: BenchmarkReport) -> dict:
    metadata = dict(report.metadata)
    metadata.setdefault("base_seed", 0)
    metadata["created_utc"] = datetime.now(timezone.utc).isoformat()
    groups = []
    for group in report.groups:
        groups.append(
            {
                "solver": group.solver,
                "distribution": group.distribution,
                "train_distribution": group.train_distribution,
                "mean_ratio": group.mean_ratio,
                "std_ratio": group.std_ratio,
                "wall_clock_seconds": group.wall_clock_seconds,
                "instances": [
                    {
                        "instance": r.instance,
                        "best_value": r.best_value,
                        "best_known": r.best_known,
                        "ratio": r.ratio,
                        "excluded": r.excluded,
                        "episodes": r.episodes,
                        "steps": r.steps,
                        "timed_out": r.timed_out,
                        "wall_clock_seconds": r.wall_clock_seconds,
                    }
                    for r in group.records
                ],
            }
        )
    doc = {"schema_version": SCHEMA_VERSION, "metadata": metadata, "groups": groups}
    validate_document(doc)
    return doc


def validate_document(doc: dict) -> None:
    try:
        jsonschema.validate(doc, RESULTS_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ValueError(f"results document does not match schema v{SCHEMA_VERSION}: {exc.message}")


def save_results(doc: dict, path) -> None:
    validate_document(doc)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_results(path) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    validate_document(doc)
    return doc


def scrub_volatile(doc: dict) -> dict:
    """Copy with timestamps removed and wall-clock fields zeroed, for
    byte-level determinism comparisons."""
    out = copy.deepcopy(doc)
    for key in VOLATILE_METADATA_KEYS:
        out.get("metadata", {}).pop(key, None)
    for group in out.get("groups", []):
        group["wall_clock_seconds"] = 0.0
        for record in group.get("instances", []):
            record["wall_clock_seconds"] = 0.0
    return out


def canonical_bytes(doc: dict) -> bytes:
    return json.dumps(doc, indent=2, sort_keys=True).encode()


def _cell(mean, std) -> str:
    if mean is None:
        return "---"
    return f"{mean:.3f} +/- {std:.3f}"


def _pivot(doc: dict):
    distributions: List[str] = []
    solvers: List[str] = []
    cells = {}
    for group in doc["groups"]:
        d, s = group["distribution"], group["solver"]
        if d not in distributions:
            distributions.append(d)
        if s not in solvers:
            solvers.append(s)
        cells[(d, s)] = (group["mean_ratio"], group["std_ratio"])
    return distributions, solvers, cells


def report_markdown(doc: dict) -> str:
    """Markdown pivot: one row per distribution, one column per solver."""
    distributions, solvers, cells = _pivot(doc)
    lines = ["| Distribution | " + " | ".join(solvers) + " |"]
    lines.append("|" + " --- |" * (len(solvers) + 1))
    for d in distributions:
        row = [d] + [_cell(*cells.get((d, s), (None, None))) for s in solvers]
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def report_csv(doc: dict) -> str:
    """Long-form delimited table, one row per (distribution, solver)."""
    lines = ["distribution,solver,mean_ratio,std_ratio,instances,wall_clock_seconds"]
    for group in doc["groups"]:
        mean = "" if group["mean_ratio"] is None else f"{group['mean_ratio']:.6f}"
        std = "" if group["std_ratio"] is None else f"{group['std_ratio']:.6f}"
        lines.append(
            f"{group['distribution']},{group['solver']},{mean},{std},"
            f"{len(group['instances'])},{group['wall_clock_seconds']:.3f}"
        )
    return "\n".join(lines) + "\n"
