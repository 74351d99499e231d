"""Closed sets, direct paths, gates, boundaries and zigzag independence.

All queries assume a simply connected lattice as ambient geometry.  In such
an ambient every zigzag is vertex-distinct, which makes the depth-first
searches of :func:`pseudospace.zigzag.iter_zigzags` exhaustive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .construction import ExtensionType, LogEntry
from .errors import ContractError
from .order import BOTTOM, TOP, Geometry
from .zigzag import iter_zigzags, require_simply_connected

BOUNDS = frozenset({BOTTOM, TOP})


@dataclass(frozen=True)
class ClosedSubset:
    """A vertex set known to be zigzag-closed in ``g``."""

    g: Geometry
    verts: frozenset

    @classmethod
    def of(cls, g: Geometry, S: Iterable[int]) -> "ClosedSubset":
        S = frozenset(S)
        verdict = is_closed(g, S)
        if not verdict:
            raise ContractError("set is not closed", verdict.witness)
        return cls(g, S)

    def __contains__(self, v) -> bool:
        return v in self.verts

    def __iter__(self):
        return iter(sorted(self.verts))

    def __len__(self) -> int:
        return len(self.verts)


@dataclass(frozen=True)
class Verdict:
    """Boolean answer with an optional witness for the negative case."""

    value: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.value


def _as_set(S) -> frozenset:
    if isinstance(S, ClosedSubset):
        return S.verts
    return frozenset(int(v) for v in S)


def _closed(g: Geometry, A) -> frozenset:
    """Validate that A is closed in g (cached per geometry) and return it as a set."""
    require_simply_connected(g)
    if isinstance(A, ClosedSubset) and A.g is g:
        return A.verts
    A = _as_set(A)
    g.check_vertex(*A)
    verdict = is_closed(g, A)
    if not verdict:
        raise ContractError("set is not closed", verdict.witness)
    return A


# -- floors and ceilings ------------------------------------------------------


def floor_of(g: Geometry, A, x: int) -> int:
    """Largest element of the closed set A below or equal to x."""
    A = _closed(g, A)
    g.check_vertex(x)
    return _floor(g, A, x)


def ceil_of(g: Geometry, A, x: int) -> int:
    A = _closed(g, A)
    g.check_vertex(x)
    return _ceil(g, A, x)


def layer_gap(g: Geometry, A, x: int) -> int:
    A = _closed(g, A)
    return g.layers[_ceil(g, A, x)] - g.layers[_floor(g, A, x)]


def _floor(g: Geometry, A: frozenset, x: int) -> int:
    if x in A:
        return x
    cands = g.below[x] & A
    return max(cands, key=lambda v: len(g.below[v]))


def _ceil(g: Geometry, A: frozenset, x: int) -> int:
    if x in A:
        return x
    cands = g.above[x] & A
    return max(cands, key=lambda v: len(g.above[v]))


def _interval_meets(g: Geometry, u: int, v: int, S: frozenset) -> bool:
    lo, hi = (u, v) if v in g.above[u] else (v, u)
    inside = g.above[lo] & g.below[hi]
    return not inside.isdisjoint(S)


# -- closedness -----------------------------------------------------------------


def _excursions(g: Geometry, S: frozenset, starts: Iterable[int]):
    """Zigzags of length >= 2 leaving S from ``starts`` and returning to S."""
    for s in sorted(starts):
        for p in iter_zigzags(g, s, stop=S.__contains__):
            if len(p) >= 3 and p[-1] in S:
                yield p


def _closed_by_sweep(g: Geometry, S: frozenset) -> Verdict:
    for p in _excursions(g, S, S):
        return Verdict(False, p)
    return Verdict(True)


def _closed_by_direct_paths(g: Geometry, S: frozenset) -> Verdict:
    # Greedy construction from {bottom, top}: add any member whose direct paths
    # into the current (closed) prefix all have length 1.  It succeeds iff S
    # is finitely constructible over {bottom, top}, i.e. iff S is closed.
    built = set(BOUNDS)
    rest = sorted(S - BOUNDS)
    while rest:
        for v in rest:
            if _delta(g, frozenset(built), v) is None:
                built.add(v)
                rest.remove(v)
                break
        else:
            return Verdict(False, tuple(rest))
    return Verdict(True)


def is_closed(g: Geometry, S, method: str = "sweep") -> Verdict:
    """Whether S contains bottom and top and every zigzag between members of S.

    ``method`` is ``"sweep"`` (search for a zigzag leaving and re-entering S)
    or ``"direct"`` (build S from {bottom, top} one closed step at a time).
    The sweep witness is the lexicographically least offending zigzag.
    """
    S = _as_set(S)
    g.check_vertex(*S)
    if not BOUNDS <= S:
        return Verdict(False, "bounds")
    require_simply_connected(g)
    key = ("closed", method, S)
    if key not in g._cache:
        if method == "sweep":
            g._cache[key] = _closed_by_sweep(g, S)
        elif method == "direct":
            g._cache[key] = _closed_by_direct_paths(g, S)
        else:
            raise ValueError(f"unknown method {method!r}")
    return g._cache[key]


# -- direct paths ---------------------------------------------------------------


def _direct_paths(g: Geometry, A: frozenset, x: int) -> list[tuple[int, ...]]:
    if x in A:
        return [(x,)]
    out = []
    step_ok = lambda u, v: v not in A or not _interval_meets(g, u, v, A)  # noqa: E731
    for p in iter_zigzags(g, x, step_ok=step_ok, stop=A.__contains__):
        if p[-1] in A:
            out.append(p)
    return out


def _delta(g: Geometry, A: frozenset, x: int) -> int | None:
    lengths = [len(p) - 1 for p in _direct_paths(g, A, x) if len(p) >= 3]
    return min(lengths) if lengths else None


def direct_paths(g: Geometry, x: int, A) -> list[tuple[int, ...]]:
    """Every direct path from x to the closed set A, in lexicographic order."""
    A = _closed(g, A)
    g.check_vertex(x)
    return _direct_paths(g, A, x)


def delta(g: Geometry, x: int, A) -> int | None:
    """Least length >= 2 of a direct path from x to A; None when A + x is closed."""
    A = _closed(g, A)
    g.check_vertex(x)
    return _delta(g, A, x)


def gate(g: Geometry, X, A) -> frozenset:
    """Endpoints of all direct paths from elements of X to the closed set A."""
    A = _closed(g, A)
    X = _as_set(X)
    g.check_vertex(*X)
    return frozenset(p[-1] for x in X for p in _direct_paths(g, A, x))


def first_step_flag(g: Geometry, z: int, A) -> frozenset:
    """Second vertices of the direct paths from z (not in A) to A."""
    A = _closed(g, A)
    g.check_vertex(z)
    if z in A:
        raise ContractError("first_step_flag needs z outside A", z)
    return frozenset(p[1] for p in _direct_paths(g, A, z))


def is_flag(g: Geometry, S: Iterable[int]) -> bool:
    S = sorted(set(S))
    return all(g.comparable(u, v) for i, u in enumerate(S) for v in S[i + 1:])


# -- closure ---------------------------------------------------------------------


def _absorb(g: Geometry, built: set, order: list, x: int) -> None:
    # Induction on (layer gap, delta): absorb the second vertex of a shortest
    # direct path first, which strictly shrinks the gap of x over the result.
    while x not in built:
        A = frozenset(built)
        long_paths = [p for p in _direct_paths(g, A, x) if len(p) >= 3]
        if not long_paths:
            built.add(x)
            order.append(LogEntry(x, ExtensionType(_floor(g, A, x), _ceil(g, A, x), g.layers[x])))
            return
        shortest = min(len(p) for p in long_paths)
        path = next(p for p in long_paths if len(p) == shortest)
        _absorb(g, built, order, path[1])


def construction_order(g: Geometry, X, base=BOUNDS) -> list[LogEntry]:
    """A construction of cl(X + base) over the closed set ``base``.

    Every prefix ``base + {v_1..v_i}`` of the returned order is closed in g and
    each entry records the type of v_i over the preceding prefix.
    """
    base = _closed(g, base)
    X = _as_set(X)
    g.check_vertex(*X)
    built, order = set(base), []
    for x in sorted(X):
        _absorb(g, built, order, x)
    return order


def _closure_fixed_point(g: Geometry, X: frozenset) -> frozenset:
    S = set(X) | BOUNDS
    while True:
        fresh = set()
        frozen = frozenset(S)
        for p in _excursions(g, frozen, frozen):
            fresh.update(p)
        if fresh <= S:
            return frozen
        S |= fresh


def closure(g: Geometry, X, method: str = "constructive") -> frozenset:
    """Smallest closed set containing X.

    ``"constructive"`` builds it one closed simple extension at a time,
    ``"fixed-point"`` keeps adding the vertices on zigzags between members.
    """
    require_simply_connected(g)
    X = _as_set(X)
    g.check_vertex(*X)
    if method == "constructive":
        return BOUNDS | {e.v for e in construction_order(g, X)}
    if method == "fixed-point":
        return _closure_fixed_point(g, X)
    raise ValueError(f"unknown method {method!r}")


def random_construction_order(g: Geometry, B, A, rng: random.Random) -> list[LogEntry]:
    """A random construction of the closed set B over the closed set A.

    Picks uniformly among the members whose addition keeps the prefix closed.
    """
    A, B = _closed(g, A), _closed(g, B)
    if not A <= B:
        raise ContractError("A must be a subset of B")
    built, order = set(A), []
    rest = sorted(B - A)
    while rest:
        prefix = frozenset(built)
        ok = [v for v in rest if _delta(g, prefix, v) is None]
        if not ok:
            raise ContractError("B is not constructible over A", tuple(rest))
        v = rng.choice(ok)
        order.append(LogEntry(v, ExtensionType(_floor(g, prefix, v), _ceil(g, prefix, v), g.layers[v])))
        built.add(v)
        rest.remove(v)
    return order


def boundary(g: Geometry, A, B, log: Sequence) -> frozenset:
    """Type endpoints landing in A along a construction of B over A.

    ``log`` is a sequence of vertices or of :class:`LogEntry`; every prefix
    must be closed and the recorded types (when given) must be correct.
    """
    A, B = _closed(g, A), _closed(g, B)
    if not A <= B:
        raise ContractError("boundary needs A inside B")
    built = set(A)
    out = set()
    for i, item in enumerate(log):
        v = item.v if isinstance(item, LogEntry) else int(item)
        prefix = frozenset(built)
        if v in prefix or v not in B:
            raise ContractError(f"log entry {i} ({v}) is not a new element of B", i)
        if _delta(g, prefix, v) is not None:
            raise ContractError(f"prefix {i} is not closed after adding {v}", i)
        t = ExtensionType(_floor(g, prefix, v), _ceil(g, prefix, v), g.layers[v])
        if isinstance(item, LogEntry) and tuple(item.type) != tuple(t):
            raise ContractError(f"log entry {i} records type {tuple(item.type)}, actual {tuple(t)}", i)
        out.update(w for w in (t.a, t.b) if w in A)
        built.add(v)
    if built != B:
        raise ContractError("log does not reconstruct B", tuple(sorted(B - built)))
    return frozenset(out)


# -- independence ------------------------------------------------------------------


def _crossing_witness(g: Geometry, A: frozenset, C: frozenset, base: frozenset):
    """Least zigzag from A to C whose contents miss ``base``, or None."""
    def step_ok(u: int, v: int) -> bool:
        return v not in base and not _interval_meets(g, u, v, base)

    for a in sorted(A - base):
        for p in iter_zigzags(g, a, step_ok=step_ok, stop=C.__contains__):
            if p[-1] in C:
                return p
    return None


def zigzag_independent(g: Geometry, A, B, C) -> Verdict:
    """Every zigzag between A and C crosses cl(B), checked on the raw sets."""
    require_simply_connected(g)
    A, C = _as_set(A), _as_set(C)
    base = closure(g, _as_set(B))
    p = _crossing_witness(g, A, C, base)
    return Verdict(p is None, p)


def _free_witness(g: Geometry, A: frozenset, B: frozenset, C: frozenset):
    for x, Y in ((A, C), (C, A)):
        for u in sorted(x):
            for v in sorted(Y & (g.above[u] | {u})):
                if not any(g.le(u, b) and g.le(b, v) for b in B):
                    return ("not-free", u, v)
    return None


def independent(g: Geometry, A, B, C, method: str = "def") -> Verdict:
    """Whether A and C are independent over B.

    The sets are first replaced by cl(AB), cl(B), cl(BC).  Methods:
    ``"def"`` (every connecting zigzag crosses cl(B)), ``"gate"``
    (gate(cl(AB)/cl(BC)) inside cl(B)), ``"free"`` (cl(AB) free from cl(BC)
    over cl(B), and the union closed) or ``"all"``, which runs the three and
    raises if they disagree.
    """
    require_simply_connected(g)
    A, B, C = _as_set(A), _as_set(B), _as_set(C)
    g.check_vertex(*(A | B | C))
    Bc = closure(g, B)
    Ac, Cc = closure(g, A | Bc), closure(g, Bc | C)
    if method == "def":
        p = _crossing_witness(g, Ac, Cc, Bc)
        return Verdict(p is None, p)
    if method == "gate":
        extra = sorted(gate(g, Ac, Cc) - Bc)
        return Verdict(not extra, tuple(extra) or None)
    if method == "free":
        w = _free_witness(g, Ac, Bc, Cc)
        if w is not None:
            return Verdict(False, w)
        union = is_closed(g, Ac | Cc)
        return Verdict(bool(union), None if union else ("union-not-closed", union.witness))
    if method == "all":
        verdicts = {m: independent(g, Ac, Bc, Cc, m) for m in ("def", "gate", "free")}
        values = {bool(v) for v in verdicts.values()}
        if len(values) != 1:
            raise AssertionError(f"independence methods disagree: {verdicts}")
        return verdicts["def"]
    raise ValueError(f"unknown method {method!r}")
