"""Plain-text instance format: "n m" header, then m lines of "u v w".

Vertices are 1-indexed on disk and 0-indexed in memory. Weights must be
integers; serialization is canonical (edges sorted by endpoints), so equal
graphs produce identical bytes.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Graph


class GsetParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GsetParseError(line, f"{what} {token!r} is not an integer") from None


def parse_gset(text: str, name: str = "") -> Graph:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GsetParseError(1, "missing header")
    header = lines[0].split()
    if len(header) != 2:
        raise GsetParseError(1, f"header must be 'n m', got {lines[0]!r}")
    n = _parse_int(header[0], 1, "vertex count")
    m = _parse_int(header[1], 1, "edge count")
    if n < 0 or m < 0:
        raise GsetParseError(1, "header counts must be non-negative")

    edges = []
    seen = set()
    lineno = 1
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 3:
            raise GsetParseError(lineno, f"edge line must be 'u v w', got {raw!r}")
        u = _parse_int(parts[0], lineno, "endpoint")
        v = _parse_int(parts[1], lineno, "endpoint")
        w = _parse_int(parts[2], lineno, "weight")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GsetParseError(lineno, f"endpoints ({u}, {v}) outside 1..{n}")
        if u == v:
            raise GsetParseError(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GsetParseError(lineno, f"duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append((u - 1, v - 1, w))
    if len(seen) != m:
        raise ValueError(f"header declares {m} edges but file contains {len(seen)}")
    return Graph(n, edges, name=name)


def serialize_gset(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    for u, v, w in graph.edges:  # already sorted by (u, v)
        lines.append(f"{u + 1} {v + 1} {w}")
    return "\n".join(lines) + "\n"


def read_gset_file(path) -> Graph:
    path = Path(path)
    return parse_gset(path.read_text(), name=path.stem)


def write_gset_file(graph: Graph, path) -> None:
    Path(path).write_text(serialize_gset(graph))
