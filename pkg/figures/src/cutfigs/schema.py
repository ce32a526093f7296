"""Validation of the results.json wire format this package consumes.

Kept independent of the solver library on purpose: the JSON file is the
only contract between the two packages.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

SUPPORTED_SCHEMA_VERSION = 1

RESULTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "metadata", "groups"],
    "properties": {
        "schema_version": {"type": "integer"},
        "metadata": {"type": "object"},
        "groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["solver", "distribution", "mean_ratio", "instances"],
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
                            "required": ["instance", "ratio"],
                            "properties": {
                                "instance": {"type": "string"},
                                "ratio": {"type": ["number", "null"]},
                                "excluded": {"type": "boolean"},
                            },
                        },
                    },
                },
            },
        },
    },
}


class ResultsSchemaError(ValueError):
    """The document is not a results file this package version understands."""


def validate_results(doc: dict) -> None:
    try:
        jsonschema.validate(doc, RESULTS_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ResultsSchemaError(f"not a valid results document: {exc.message}") from None
    version = doc["schema_version"]
    if version != SUPPORTED_SCHEMA_VERSION:
        raise ResultsSchemaError(
            f"results schema version {version} unsupported "
            f"(this build reads version {SUPPORTED_SCHEMA_VERSION})"
        )


def load_results(path) -> dict:
    doc = json.loads(Path(path).read_text())
    validate_results(doc)
    return doc
