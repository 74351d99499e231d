"""JSON and DOT serialisation of geometries, logs and sequences."""

from __future__ import annotations

import json
from typing import Iterable

from .construction import ConstructionLog, LogEntry
from .errors import InputError
from .order import Geometry


def geometry_to_json(g: Geometry) -> dict:
    """Canonical JSON form; ``lt`` lists the Hasse covers only."""
    return {
        "n": g.n,
        "vertices": [{"id": v, "layer": s} for v, s in enumerate(g.layers)],
        "lt": [list(p) for p in g.covers()],
    }


def dumps_geometry(g: Geometry) -> str:
    return json.dumps(geometry_to_json(g), sort_keys=True)


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


def geometry_from_json(data) -> Geometry:
    """Parse the geometry schema; ``lt`` may list generators only."""
    if not isinstance(data, dict):
        raise InputError("geometry must be a JSON object")
    missing = {"n", "vertices", "lt"} - set(data)
    if missing:
        raise InputError(f"geometry is missing keys {sorted(missing)}")
    n = _int(data["n"], "n")
    verts = data["vertices"]
    if not isinstance(verts, list):
        raise InputError("vertices must be a list")
    layers = {}
    for item in verts:
        if not isinstance(item, dict) or set(item) != {"id", "layer"}:
            raise InputError(f"bad vertex entry {item!r}")
        vid = _int(item["id"], "vertex id")
        if vid in layers:
            raise InputError(f"duplicate vertex id {vid}")
        layers[vid] = _int(item["layer"], "layer")
    if sorted(layers) != list(range(len(layers))):
        raise InputError("vertex ids must be dense 0..V-1")
    pairs = []
    if not isinstance(data["lt"], list):
        raise InputError("lt must be a list")
    for pair in data["lt"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"bad relation entry {pair!r}")
        pairs.append((_int(pair[0], "relation id"), _int(pair[1], "relation id")))
    return Geometry.from_pairs(n, [layers[v] for v in range(len(layers))], pairs)


def loads_geometry(text: str) -> Geometry:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return geometry_from_json(data)


def log_from_jsonl(lines: Iterable[str]) -> ConstructionLog:
    entries = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            entries.append(LogEntry.from_json(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad log line {line!r}: {exc}") from exc
    return ConstructionLog(entries)


def to_dot(g: Geometry, names: dict[int, str] | None = None) -> str:
    """Hasse diagram as a DOT digraph, one rank per layer, edges pointing up."""
    names = names or {}
    label = lambda v: names.get(v, {0: "bot", 1: "top"}.get(v, str(v)))  # noqa: E731
    lines = ["digraph geometry {", "  rankdir=BT;"]
    for s in sorted(set(g.layers)):
        members = " ".join(f"v{v};" for v in g.vertices if g.layers[v] == s)
        lines.append(f"  {{ rank=same; {members} }}")
    for v in g.vertices:
        lines.append(f'  v{v} [label="{label(v)}\\nL{g.layers[v]}"];')
    for x, y in g.covers():
        lines.append(f"  v{x} -> v{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
