"""Growing geometries by simple extensions: the universal builder and the ladder gadget."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import ContractError, InputError
from .order import Geometry


class ExtensionType(NamedTuple):
    """A vertex added between ``a < b`` in layer ``s``."""

    a: int
    b: int
    s: int


class Policy(str, Enum):
    ROUND_ROBIN = "rr"
    SEEDED_RANDOM = "random"


@dataclass(frozen=True)
class BuildSchedule:
    n_param: int
    steps: int
    seed: int = 0
    policy: Policy = Policy.ROUND_ROBIN

    def __post_init__(self) -> None:
        if self.steps < 0:
            raise InputError("steps must be non-negative")
        if self.n_param < 0:
            raise InputError("N must be non-negative")
        object.__setattr__(self, "policy", Policy(self.policy))


class LogEntry(NamedTuple):
    v: int
    type: ExtensionType

    def to_json(self) -> dict:
        return {"v": self.v, "a": self.type.a, "b": self.type.b, "s": self.type.s}

    @classmethod
    def from_json(cls, data: dict) -> "LogEntry":
        return cls(int(data["v"]), ExtensionType(int(data["a"]), int(data["b"]), int(data["s"])))


@dataclass
class ConstructionLog:
    entries: list[LogEntry] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_jsonl(self) -> str:
        import json
        return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in self.entries)


def trivial_geometry(n: int) -> Geometry:
    """The two-element geometry {bottom < top}."""
    if n < 0:
        raise InputError("N must be non-negative")
    return Geometry(n, [-1, n + 1], [[False, True], [False, False]])


def check_type(g: Geometry, t: ExtensionType) -> None:
    a, b, s = t
    g.check_vertex(a, b)
    if not g.less(a, b):
        raise ContractError(f"type {tuple(t)}: {a} is not below {b}", t)
    if not g.layers[a] < s < g.layers[b]:
        raise ContractError(f"type {tuple(t)}: layer {s} not strictly between "
                            f"{g.layers[a]} and {g.layers[b]}", t)


def simple_extension(g: Geometry, t: ExtensionType) -> tuple[Geometry, int]:
    """Add a vertex x in layer s with exactly the relations implied by a < x < b."""
    t = ExtensionType(*t)
    check_type(g, t)
    x = g.size
    lt = np.zeros((x + 1, x + 1), dtype=bool)
    lt[:x, :x] = g.lt
    lt[:x, x] = g.lt[:, t.a]
    lt[t.a, x] = True
    lt[x, :x] = g.lt[t.b, :]
    lt[x, t.b] = True
    out = Geometry(g.n, g.layers + (t.s,), lt)
    return out, x


def available_types(g: Geometry) -> list[ExtensionType]:
    """Every valid type of g, ordered by (a, b, s)."""
    out = []
    for a in g.vertices:
        la = g.layers[a]
        for b in g.above_sorted[a]:
            out.extend(ExtensionType(a, b, s) for s in range(la + 1, g.layers[b]))
    return out


def build_universal(sched: BuildSchedule) -> tuple[Geometry, ConstructionLog]:
    """Apply ``sched.steps`` simple extensions starting from {bottom, top}.

    Round robin works in rounds: each round takes the types available at
    its start in (a, b, s) order and uses each once, so every type that
    ever becomes available is used in all later rounds.
    """
    g = trivial_geometry(sched.n_param)
    log = ConstructionLog()
    rng = random.Random(sched.seed)
    queue: list[ExtensionType] = []
    for _ in range(sched.steps):
        if sched.policy is Policy.ROUND_ROBIN:
            if not queue:
                queue = available_types(g)[::-1]
            t = queue.pop()
        else:
            types = available_types(g)
            t = types[rng.randrange(len(types))]
        g, x = simple_extension(g, t)
        log.entries.append(LogEntry(x, t))
    return g, log


def replay(n: int, log, start: Geometry | None = None) -> Geometry:
    """Rebuild a geometry from a construction log."""
    g = trivial_geometry(n) if start is None else start
    for entry in log:
        g, x = simple_extension(g, entry.type)
        if x != entry.v:
            raise InputError(f"log entry creates vertex {x}, log says {entry.v}")
    return g


@dataclass(frozen=True)
class Ladder:
    """Result of :func:`ladder_gadget`.

    ``anchor`` is the fresh rung next to ``a`` (or next to ``b`` in the dual
    case) that starts the ladder; ``rungs`` lists the ladder vertices in
    creation order, anchor first.
    """

    geometry: Geometry
    x: int
    anchor: int
    rungs: tuple[int, ...]


def ladder_gadget(g: Geometry, A, a: int, b: int, s: int, k: int) -> Ladder:
    """Materialise the alternating ladder that pushes x away from A.

    With r, t the layers of a, b and ``s <= t - 2``: the anchor a0 has type
    (a, b, r+1), then b_i has type (a_i, b, t-1) and a_{i+1} has type
    (a, b_i, r+1); finally x gets type (a, b_k, s).  When only ``s >= r + 2``
    holds the order-dual ladder hangs from b instead.
    """
    A = frozenset(A)
    g.check_vertex(a, b)
    if a not in A or b not in A:
        raise ContractError("ladder endpoints must lie in A", (a, b))
    if not g.less(a, b):
        raise ContractError(f"{a} is not below {b}", (a, b))
    if k < 0:
        raise InputError("k must be non-negative")
    r, t = g.layers[a], g.layers[b]
    if t - r < 3:
        raise ContractError(f"layer gap {t - r} between a and b is below 3", (a, b))
    if not r < s < t:
        raise ContractError(f"layer {s} not strictly between {r} and {t}", (a, b, s))
    rungs = []
    if s <= t - 2:
        g, low = simple_extension(g, ExtensionType(a, b, r + 1))
        anchor = low
        rungs.append(low)
        for i in range(k + 1):
            g, high = simple_extension(g, ExtensionType(low, b, t - 1))
            rungs.append(high)
            if i < k:
                g, low = simple_extension(g, ExtensionType(a, high, r + 1))
                rungs.append(low)
        g, x = simple_extension(g, ExtensionType(a, high, s))
    else:
        g, high = simple_extension(g, ExtensionType(a, b, t - 1))
        anchor = high
        rungs.append(high)
        for i in range(k + 1):
            g, low = simple_extension(g, ExtensionType(a, high, r + 1))
            rungs.append(low)
            if i < k:
                g, high = simple_extension(g, ExtensionType(low, b, t - 1))
                rungs.append(high)
        g, x = simple_extension(g, ExtensionType(low, b, s))
    return Ladder(g, x, anchor, tuple(rungs))


__all__ = [
    "BuildSchedule", "ConstructionLog", "ExtensionType", "Ladder",
    "LogEntry", "Policy", "available_types", "build_universal", "ladder_gadget",
    "replay", "simple_extension", "trivial_geometry",
]
