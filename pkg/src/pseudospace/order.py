"""Finite bounded layered partial orders (N-geometries) and their lattice operations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

BOTTOM = 0
TOP = 1


class Geometry:
    """An immutable finite strict order with a layer function.

    Vertices are the dense ids ``0 .. size-1``; id 0 is reserved for the
    bottom element and id 1 for the top.  ``lt`` is the full (transitively
    closed) strict relation, ``lt[x, y]`` meaning ``x < y``.

    The constructor only checks shapes; whether the data actually form an
    N-geometry is answered by :func:`validate_geometry`.
    """

    def __init__(self, n: int, layers: Sequence[int], lt) -> None:
        lt = np.array(lt, dtype=bool, copy=True)
        size = len(layers)
        if lt.shape != (size, size):
            raise InputError(f"relation has shape {lt.shape}, expected {(size, size)}")
        lt.setflags(write=False)
        self.n = int(n)
        self.layers = tuple(int(s) for s in layers)
        self.lt = lt
        self._cache: dict = {}

    @classmethod
    def from_pairs(cls, n: int, layers: Sequence[int], pairs: Iterable[tuple[int, int]],
                   bounded: bool = False) -> "Geometry":
        """Build from generating pairs ``x < y``; the transitive closure is taken.

        With ``bounded`` the relations ``0 < v < 1`` are added for every other v.
        """
        size = len(layers)
        lt = np.zeros((size, size), dtype=bool)
        for x, y in pairs:
            if not (0 <= x < size and 0 <= y < size):
                raise InputError(f"pair ({x}, {y}) refers to an unknown vertex")
            lt[x, y] = True
        if bounded:
            lt[BOTTOM, 2:] = True
            lt[BOTTOM, TOP] = True
            lt[2:, TOP] = True
        return cls(n, layers, transitive_closure(lt))

    # -- basic queries ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.layers)

    @property
    def vertices(self) -> range:
        return range(self.size)

    def layer(self, x: int) -> int:
        return self.layers[x]

    def check_vertex(self, *xs: int) -> None:
        for x in xs:
            if not isinstance(x, (int, np.integer)) or not 0 <= x < self.size:
                raise InputError(f"unknown vertex id {x!r}")

    @cached_property
    def above(self) -> tuple[frozenset, ...]:
        """``above[x]`` is the set of y with x < y."""
        return tuple(frozenset(np.flatnonzero(self.lt[x]).tolist()) for x in self.vertices)

    @cached_property
    def below(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(np.flatnonzero(self.lt[:, x]).tolist()) for x in self.vertices)

    @cached_property
    def above_sorted(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.above)

    @cached_property
    def below_sorted(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.below)

    @cached_property
    def comparable_sorted(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(self.above[x] | self.below[x])) for x in self.vertices)

    def less(self, x: int, y: int) -> bool:
        return y in self.above[x]

    def le(self, x: int, y: int) -> bool:
        return x == y or y in self.above[x]

    def comparable(self, x: int, y: int) -> bool:
        return x == y or y in self.above[x] or x in self.above[y]

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        """``meet_table[x][y]`` is the meet of x and y, or -1 when absent."""
        return _bound_table(self.lt)

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        return _bound_table(self.lt.T)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(x, y)`` with y covering x."""
        lt = self.lt.astype(np.int64)
        between = (lt @ lt) > 0
        xs, ys = np.nonzero(self.lt & ~between)
        return sorted(zip(xs.tolist(), ys.tolist()))

    # -- derived geometries ---------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "Geometry":
        """Return the isomorphic copy in which vertex v gets id ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(self.vertices):
            raise InputError("relabelling is not a permutation of the vertex ids")
        inv = np.argsort(perm)
        layers = [self.layers[inv[i]] for i in self.vertices]
        return Geometry(self.n, layers, self.lt[np.ix_(inv, inv)])

    def induced(self, vertices: Iterable[int]) -> tuple["Geometry", list[int]]:
        """Restrict to a vertex subset; returns the subgeometry and its old ids.

        New ids follow ascending old ids, so bottom and top keep ids 0 and 1
        whenever they are included.
        """
        old = sorted(set(vertices))
        self.check_vertex(*old)
        sub = Geometry(self.n, [self.layers[v] for v in old], self.lt[np.ix_(old, old)])
        return sub, old

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Geometry):
            return NotImplemented
        return (self.n == other.n and self.layers == other.layers
                and np.array_equal(self.lt, other.lt))

    def __hash__(self) -> int:
        return hash((self.n, self.layers, self.lt.tobytes()))

    def __repr__(self) -> str:
        return f"Geometry(n={self.n}, size={self.size}, relations={int(self.lt.sum())})"


def transitive_closure(lt: np.ndarray) -> np.ndarray:
    """Warshall's algorithm on a boolean matrix."""
    closed = np.array(lt, dtype=bool, copy=True)
    for k in range(closed.shape[0]):
        closed |= np.outer(closed[:, k], closed[k, :])
    return closed


def _bound_table(lt: np.ndarray) -> tuple[tuple[int, ...], ...]:
    # Greatest common lower bound for every pair (pass lt.T for least upper bounds).
    size = lt.shape[0]
    if size == 0:
        return ()
    le = lt | np.eye(size, dtype=bool)
    le_t = le.T  # le_t[x, z] == (z <= x)
    lower = le_t[:, None, :] & le_t[None, :, :]  # lower[x, y, z]: z <= x and z <= y
    height = le.sum(axis=0)  # number of elements below-or-equal each z
    score = np.where(lower, height[None, None, :], -1)
    cand = score.argmax(axis=-1)
    has = lower.any(axis=-1)
    # every common lower bound must lie below the candidate
    dominated = ~(lower & ~le_t[cand]).any(axis=-1)
    table = np.where(has & dominated, cand, -1)
    return tuple(tuple(row) for row in table.tolist())


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple


def validate_geometry(g: Geometry) -> list[Violation]:
    """List every violated N-geometry axiom; an empty list means g is valid."""
    report: list[Violation] = []
    size, lt, top_layer = g.size, g.lt, g.n + 1
    if g.n < 0:
        report.append(Violation("n-nonnegative", (g.n,)))
    if size < 2:
        report.append(Violation("bounds", ("missing bottom or top",)))
        return report
    for x in np.flatnonzero(np.diag(lt)).tolist():
        report.append(Violation("irreflexivity", (x,)))
    lt_i = lt.astype(np.int64)
    xs, zs = np.nonzero(((lt_i @ lt_i) > 0) & ~lt)
    for x, z in zip(xs.tolist(), zs.tolist()):
        y = next(y for y in g.vertices if lt[x, y] and lt[y, z])
        report.append(Violation("transitivity", (x, y, z)))
    for x, s in enumerate(g.layers):
        if not -1 <= s <= top_layer:
            report.append(Violation("layer-range", (x, s)))
    xs, ys = np.nonzero(lt)
    for x, y in zip(xs.tolist(), ys.tolist()):
        if x != y and not g.layers[x] < g.layers[y]:
            report.append(Violation("layer-monotonicity", (x, y)))
    if g.layers[BOTTOM] != -1:
        report.append(Violation("bottom-layer", (BOTTOM, g.layers[BOTTOM])))
    if g.layers[TOP] != top_layer:
        report.append(Violation("top-layer", (TOP, g.layers[TOP])))
    for v in range(2, size):
        if not lt[BOTTOM, v]:
            report.append(Violation("bottom-below", (BOTTOM, v)))
        if not lt[v, TOP]:
            report.append(Violation("top-above", (v, TOP)))
        if g.layers[v] == -1:
            report.append(Violation("unique-bottom", (v,)))
        if g.layers[v] == top_layer:
            report.append(Violation("unique-top", (v,)))
    if not lt[BOTTOM, TOP]:
        report.append(Violation("bottom-below", (BOTTOM, TOP)))
    return report


def meet(g: Geometry, x: int, y: int) -> int | None:
    """Greatest lower bound of x and y, or None if it does not exist."""
    g.check_vertex(x, y)
    m = g.meet_table[x][y]
    return None if m < 0 else m


def join(g: Geometry, x: int, y: int) -> int | None:
    g.check_vertex(x, y)
    m = g.join_table[x][y]
    return None if m < 0 else m


@dataclass(frozen=True)
class LatticeReport:
    is_lattice: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_lattice


def is_lattice(g: Geometry) -> LatticeReport:
    if "lattice" in g._cache:
        return g._cache["lattice"]
    if validate_geometry(g):
        raise InputError("is_lattice needs a valid N-geometry")
    report = LatticeReport(True)
    for x in g.vertices:
        row_m, row_j = g.meet_table[x], g.join_table[x]
        bad = next((y for y in range(x + 1, g.size) if row_m[y] < 0 or row_j[y] < 0), None)
        if bad is not None:
            report = LatticeReport(False, (x, bad))
            break
    g._cache["lattice"] = report
    return report


def open_interval(g: Geometry, a: int, b: int) -> frozenset:
    """Vertices strictly between a and b, in either orientation."""
    g.check_vertex(a, b)
    if g.less(b, a):
        a, b = b, a
    return g.above[a] & g.below[b]


def closed_interval(g: Geometry, a: int, b: int) -> frozenset:
    g.check_vertex(a, b)
    if a == b:
        return frozenset({a})
    if g.less(b, a):
        a, b = b, a
    if not g.less(a, b):
        return frozenset()
    return (g.above[a] & g.below[b]) | {a, b}
