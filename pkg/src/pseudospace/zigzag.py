"""Alternating sequences, zigzags, refinement and zigzag-cycle search."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterator, Sequence

from .errors import ContractError, InputError, NotSimplyConnected
from .order import Geometry, is_lattice


class SeqClass(IntEnum):
    NOT_ALTERNATING = 0
    ALTERNATING = 1
    WEAK_ZIGZAG = 2
    ZIGZAG = 3


@dataclass(frozen=True)
class AltSeq:
    """A vertex sequence together with the direction of its first step.

    ``up`` is True when ``x0 <= x1``.  It is inferred from the order when
    left as None and the first two vertices are distinct and comparable.
    """

    g: Geometry
    verts: tuple[int, ...]
    up: bool | None = None

    def __post_init__(self) -> None:
        verts = tuple(int(v) for v in self.verts)
        if not verts:
            raise InputError("empty sequence")
        self.g.check_vertex(*verts)
        object.__setattr__(self, "verts", verts)
        if self.up is None and len(verts) > 1:
            x0, x1 = verts[0], verts[1]
            if self.g.less(x0, x1):
                object.__setattr__(self, "up", True)
            elif self.g.less(x1, x0):
                object.__setattr__(self, "up", False)

    @property
    def length(self) -> int:
        return len(self.verts) - 1

    def is_sink(self, i: int) -> bool:
        return (i % 2 == 0) == bool(self.up)

    @property
    def sinks(self) -> tuple[int, ...]:
        return tuple(v for i, v in enumerate(self.verts) if self.is_sink(i))

    @property
    def peaks(self) -> tuple[int, ...]:
        return tuple(v for i, v in enumerate(self.verts) if not self.is_sink(i))

    def to_json(self) -> dict:
        return {"verts": list(self.verts), "dir": "up" if self.up else "down"}

    @classmethod
    def from_json(cls, g: Geometry, data: dict) -> "AltSeq":
        return cls(g, tuple(data["verts"]), data.get("dir", "up") == "up")


@dataclass(frozen=True)
class ZigzagCycle:
    """A closed zigzag ``a0, b0, a1, b1, ..., a(n-1), b(n-1)`` read modulo 2n."""

    verts: tuple[int, ...]

    @property
    def sinks(self) -> tuple[int, ...]:
        return self.verts[0::2]

    @property
    def peaks(self) -> tuple[int, ...]:
        return self.verts[1::2]

    def to_json(self) -> dict:
        return {"cycle": list(self.verts), "peaks": list(self.peaks)}


def _alternates(s: AltSeq) -> bool:
    g, v = s.g, s.verts
    if len(v) > 1 and s.up is None:
        return False
    for i in range(len(v) - 1):
        if s.is_sink(i):
            if not g.le(v[i], v[i + 1]):
                return False
        elif not g.le(v[i + 1], v[i]):
            return False
    return True


def _zigzag_conditions(s: AltSeq) -> bool:
    g, v = s.g, s.verts
    if any(v[i] == v[i + 1] for i in range(len(v) - 1)):
        return False
    for i in range(1, len(v) - 1):
        table = g.meet_table if s.is_sink(i) else g.join_table
        if table[v[i - 1]][v[i + 1]] != v[i]:
            return False
    return True


def _weak_conditions(s: AltSeq) -> bool:
    g, v = s.g, s.verts
    if len(v) < 3:
        return False
    for i in range(len(v)):
        for j in (i + 2, i + 3):
            if j < len(v) and g.comparable(v[i], v[j]):
                return False
    return True


def classify(s: AltSeq) -> SeqClass:
    """Strongest class the sequence belongs to."""
    if not _alternates(s):
        return SeqClass.NOT_ALTERNATING
    if _zigzag_conditions(s):
        return SeqClass.ZIGZAG
    if _weak_conditions(s):
        return SeqClass.WEAK_ZIGZAG
    return SeqClass.ALTERNATING


def is_zigzag(g: Geometry, verts: Sequence[int]) -> bool:
    return classify(AltSeq(g, tuple(verts))) == SeqClass.ZIGZAG


def refine(s: AltSeq) -> AltSeq:
    """Refine a weak zigzag to a zigzag with the same endpoints.

    Interior sinks are raised to the meet of their neighbouring peaks, then
    interior peaks are lowered to the join of the new neighbouring sinks.
    """
    cls = classify(s)
    if cls < SeqClass.WEAK_ZIGZAG:
        raise ContractError(f"refine needs a weak zigzag, got {cls.name}", s.verts)
    if cls == SeqClass.ZIGZAG:
        return s
    if not is_lattice(s.g):
        raise ContractError("refine needs a lattice")
    g, v = s.g, list(s.verts)
    last = len(v) - 1
    for i in range(1, last):
        if s.is_sink(i):
            v[i] = g.meet_table[v[i - 1]][v[i + 1]]
    for i in range(1, last):
        if not s.is_sink(i):
            v[i] = g.join_table[v[i - 1]][v[i + 1]]
    return AltSeq(g, tuple(v), s.up)


def prepend(c: int, z: AltSeq) -> AltSeq:
    """Put c in front of a zigzag ``a0, b0, ...`` (or its order dual).

    For ``c >= a0`` with ``c`` not above ``b0``: if ``c < b0`` the result
    ``c, b0, ...`` is a zigzag, if c and b0 are incomparable the result
    ``c, a0, b0, ...`` is a weak zigzag.
    """
    g = z.g
    g.check_vertex(c)
    if classify(z) != SeqClass.ZIGZAG or z.length < 1:
        raise ContractError("prepend needs a zigzag of length >= 1", z.verts)
    x0, x1 = z.verts[0], z.verts[1]
    if z.up:
        below_first, above_second = g.le(x0, c), g.le(x1, c)
        strictly_inside = g.less(c, x1)
    else:
        below_first, above_second = g.le(c, x0), g.le(c, x1)
        strictly_inside = g.less(x1, c)
    rel = ">=" if z.up else "<="
    if not below_first:
        raise ContractError(f"prepend: c {rel} x0 fails", ("c-vs-x0", c, x0))
    if above_second:
        raise ContractError(f"prepend: c must not be {rel} x1", ("c-vs-x1", c, x1))
    if c == x0:
        return z
    if strictly_inside:
        return AltSeq(g, (c,) + z.verts[1:], z.up)
    return AltSeq(g, (c,) + z.verts, not z.up)


def iter_zigzags(g: Geometry, start: int, *,
                 step_ok: Callable[[int, int], bool] | None = None,
                 stop: Callable[[int], bool] | None = None,
                 max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Depth-first, lexicographic enumeration of vertex-distinct zigzags from ``start``.

    Every zigzag (including the length-0 one) is yielded once.  Paths whose
    last vertex satisfies ``stop`` are yielded but not extended; ``step_ok``
    filters individual steps.
    """
    meet_t, join_t = g.meet_table, g.join_table
    path = [start]
    on_path = {start}

    def extend(up_next: bool | None) -> Iterator[tuple[int, ...]]:
        yield tuple(path)
        if max_len is not None and len(path) > max_len:
            return
        if len(path) > 1 and stop is not None and stop(path[-1]):
            return
        q = path[-1]
        if up_next is None:
            cands = g.comparable_sorted[q]
        else:
            cands = g.above_sorted[q] if up_next else g.below_sorted[q]
        if len(path) > 1:
            table = meet_t if up_next else join_t
            row = table[path[-2]]
            cands = [r for r in cands if row[r] == q]
        for r in cands:
            if r in on_path or (step_ok is not None and not step_ok(q, r)):
                continue
            up = r in g.above[q]
            path.append(r)
            on_path.add(r)
            yield from extend(not up)
            path.pop()
            on_path.discard(r)

    yield from extend(None)


def enumerate_zigzags(g: Geometry, x: int, y: int, max_len: int) -> list[AltSeq]:
    """All vertex-distinct zigzags from x to y of length at most ``max_len``."""
    g.check_vertex(x, y)
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    out = []
    for p in iter_zigzags(g, x, stop=lambda v: v == y, max_len=max_len):
        if p[-1] == y:
            out.append(AltSeq(g, p))
    return out


def find_zigzag_cycle(g: Geometry, max_peaks: int | None = None) -> ZigzagCycle | None:
    """Search for a zigzag cycle with pairwise distinct peaks.

    Peaks are chosen depth first; every sink is forced to be the meet of its
    two neighbouring peaks and every peak must be the join of its two
    neighbouring sinks.  The first peak is the least id on the cycle.
    """
    if not is_lattice(g):
        raise ContractError("find_zigzag_cycle needs a lattice")
    if max_peaks is None:
        max_peaks = g.size
    meet_t, join_t = g.meet_table, g.join_table
    peaks: list[int] = []
    sinks: list[int] = []  # sinks[i-1] sits between peaks[i-1] and peaks[i]

    def close() -> ZigzagCycle | None:
        b0, bl = peaks[0], peaks[-1]
        a0 = meet_t[bl][b0]
        if a0 in (bl, b0):
            return None
        if join_t[sinks[-1]][a0] != bl or join_t[a0][sinks[0]] != b0:
            return None
        verts = [a0]
        for i, b in enumerate(peaks):
            verts.append(b)
            if i < len(sinks):
                verts.append(sinks[i])
        return ZigzagCycle(tuple(verts))

    def grow() -> ZigzagCycle | None:
        if len(peaks) >= 3:
            found = close()
            if found:
                return found
        if len(peaks) >= max_peaks:
            return None
        prev = peaks[-1]
        for b in range(peaks[0] + 1, g.size):
            if b in peaks:
                continue
            a = meet_t[prev][b]
            if a < 0 or a == prev or a == b:
                continue
            if len(sinks) >= 1 and join_t[sinks[-1]][a] != prev:
                continue
            peaks.append(b)
            sinks.append(a)
            found = grow()
            if found:
                return found
            peaks.pop()
            sinks.pop()
        return None

    for b0 in g.vertices:
        peaks[:] = [b0]
        sinks.clear()
        found = grow()
        if found:
            return found
    return None


def zigzag_cycle(g: Geometry) -> ZigzagCycle | None:
    """Cached exhaustive cycle search for g."""
    if "cycle" not in g._cache:
        g._cache["cycle"] = find_zigzag_cycle(g)
    return g._cache["cycle"]


def require_simply_connected(g: Geometry) -> None:
    if not is_lattice(g):
        raise ContractError("ambient geometry is not a lattice", is_lattice(g).witness)
    cycle = zigzag_cycle(g)
    if cycle is not None:
        raise NotSimplyConnected("ambient geometry contains a zigzag cycle", cycle)
