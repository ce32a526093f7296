"""Best-known-value registry keyed by instance name.

Each instance holds one entry whose provenance ranks its trustworthiness:
EXTERNAL (user-supplied, e.g. published values) over BRUTE_FORCE (exact)
over BEST_FOUND (running maximum of benchmarked values).
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

PROVENANCES = ("EXTERNAL", "BRUTE_FORCE", "BEST_FOUND")
_RANK = {name: i for i, name in enumerate(PROVENANCES)}


class BestKnownRegistry:
    def __init__(self, entries: Optional[Dict[str, Tuple[int, str]]] = None):
        self.entries: Dict[str, Tuple[int, str]] = {}
        for name, (value, provenance) in (entries or {}).items():
            self.record(name, value, provenance)

    def record(self, name: str, value: int, provenance: str) -> None:
        """Insert or update, honoring provenance precedence.

        A higher-precedence entry replaces a lower one; within the same
        provenance the larger value wins, so merging never lowers anything.
        """
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        value = int(value)
        existing = self.entries.get(name)
        if existing is None:
            self.entries[name] = (value, provenance)
            return
        old_value, old_prov = existing
        if _RANK[provenance] < _RANK[old_prov]:
            self.entries[name] = (value, provenance)
        elif provenance == old_prov and value > old_value:
            self.entries[name] = (value, provenance)

    def record_best_found(self, name: str, value: int) -> None:
        self.record(name, value, "BEST_FOUND")

    def lookup(self, name: str) -> Optional[Tuple[int, str]]:
        return self.entries.get(name)

    def best_known(self, name: str) -> Optional[int]:
        entry = self.entries.get(name)
        return entry[0] if entry else None

    def merge(self, other: "BestKnownRegistry") -> None:
        for name, (value, provenance) in other.entries.items():
            self.record(name, value, provenance)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name):
        return name in self.entries

    def copy(self) -> "BestKnownRegistry":
        return BestKnownRegistry(dict(self.entries))


def save_registry(registry: BestKnownRegistry, path) -> None:
    """One tab-separated line per instance: name, value, provenance."""
    with open(path, "w") as fh:
        for name in sorted(registry.entries):
            value, provenance = registry.entries[name]
            fh.write(f"{name}\t{value}\t{provenance}\n")


def load_registry(path) -> BestKnownRegistry:
    registry = BestKnownRegistry()
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            name, value, provenance = parts
            try:
                registry.record(name, int(value), provenance)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return registry
