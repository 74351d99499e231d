"""Brute-force reference implementations and small-structure enumeration.

Nothing here reuses the search code of the main modules: orders are read
straight from the relation matrix, meets and joins are found by scanning all
bounds, and zigzags are enumerated as raw vertex sequences (repeats allowed)
and checked against the definitions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .errors import ContractError, InputError
from .order import Geometry

EXHAUSTIVE_BOUND = 8


class Kind(str, Enum):
    ALL_POSETS = "posets"
    LATTICES = "lattices"
    N_GEOMETRY_LATTICES = "ngeometries"


@dataclass(frozen=True)
class EnumerationSpec:
    max_vertices: int
    constraint: Kind = Kind.LATTICES
    n_param: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraint", Kind(self.constraint))


class Naive:
    """Order predicates of one geometry computed the slow, obvious way."""

    def __init__(self, g: Geometry) -> None:
        self.g = g
        self.V = list(range(g.size))
        self.rel = {(x, y) for x in self.V for y in self.V if bool(g.lt[x, y])}
        self._inf: dict = {}
        self._sup: dict = {}

    def lt(self, x, y) -> bool:
        return (x, y) in self.rel

    def le(self, x, y) -> bool:
        return x == y or (x, y) in self.rel

    def comp(self, x, y) -> bool:
        return self.le(x, y) or self.le(y, x)

    def inf(self, x, y):
        key = (x, y)
        if key not in self._inf:
            lows = [z for z in self.V if self.le(z, x) and self.le(z, y)]
            best = [z for z in lows if all(self.le(w, z) for w in lows)]
            self._inf[key] = best[0] if best else None
        return self._inf[key]

    def sup(self, x, y):
        key = (x, y)
        if key not in self._sup:
            ups = [z for z in self.V if self.le(x, z) and self.le(y, z)]
            best = [z for z in ups if all(self.le(z, w) for w in ups)]
            self._sup[key] = best[0] if best else None
        return self._sup[key]

    def is_lattice(self) -> bool:
        return all(self.inf(x, y) is not None and self.sup(x, y) is not None
                   for x in self.V for y in self.V)

    def interval(self, u, v) -> set:
        lo, hi = (u, v) if self.le(u, v) else (v, u)
        return {z for z in self.V if self.lt(lo, z) and self.lt(z, hi)}

    # -- sequences ---------------------------------------------------------

    def _directions(self, seq):
        """Possible first-step directions making seq alternating (True = up)."""
        out = []
        for up in (True, False):
            ok = True
            for i in range(len(seq) - 1):
                step_up = (i % 2 == 0) == up
                a, b = seq[i], seq[i + 1]
                if not (self.le(a, b) if step_up else self.le(b, a)):
                    ok = False
                    break
            if ok:
                out.append(up)
        return out

    def is_zigzag(self, seq) -> bool:
        if len(seq) == 1:
            return True
        if any(seq[i] == seq[i + 1] for i in range(len(seq) - 1)):
            return False
        for up in self._directions(seq):
            good = True
            for i in range(1, len(seq) - 1):
                sink = (i % 2 == 0) == up
                want = self.inf(seq[i - 1], seq[i + 1]) if sink else self.sup(seq[i - 1], seq[i + 1])
                if want != seq[i]:
                    good = False
                    break
            if good:
                return True
        return False

    def is_weak_zigzag(self, seq) -> bool:
        if len(seq) < 3 or not self._directions(seq):
            return False
        return all(not self.comp(seq[i], seq[j])
                   for i in range(len(seq)) for j in (i + 2, i + 3) if j < len(seq))

    def zigzags_from(self, x, max_len):
        """All zigzags starting at x of length <= max_len; vertices may repeat.

        The zigzag conditions only involve consecutive triples, so each
        extension is checked on its last three vertices.
        """
        out = []

        def rec(seq):
            out.append(tuple(seq))
            if len(seq) > max_len:
                return
            for y in self.V:
                if y != seq[-1] and self.comp(seq[-1], y) and self.is_zigzag(seq[-2:] + [y]):
                    rec(seq + [y])

        rec([x])
        return out

    def zigzags(self, x, y, max_len):
        return [p for p in self.zigzags_from(x, max_len) if p[-1] == y]

    # -- closed sets -----------------------------------------------------------

    def _bound(self):
        return self.g.size + 1

    def is_closed(self, S) -> bool:
        S = set(S)
        if not {0, 1} <= S:
            return False
        for x in S:
            for p in self.zigzags_from(x, self._bound()):
                if p[-1] in S and not set(p) <= S:
                    return False
        return True

    def closure(self, X) -> frozenset:
        S = set(X) | {0, 1}
        while True:
            new = set(S)
            for x in S:
                for p in self.zigzags_from(x, self._bound()):
                    if p[-1] in S:
                        new |= set(p)
            if new == S:
                return frozenset(S)
            S = new

    def floor(self, A, x):
        return max((a for a in A if self.le(a, x)), key=lambda a: sum(self.le(b, a) for b in self.V))

    def ceil(self, A, x):
        return max((a for a in A if self.le(x, a)), key=lambda a: sum(self.le(a, b) for b in self.V))

    def direct_paths(self, x, A) -> list:
        A = set(A)
        out = []
        for p in self.zigzags_from(x, self._bound()):
            if p[-1] in A and all(v not in A for v in p[:-1]):
                if len(p) == 1 or not (self.interval(p[-2], p[-1]) & A):
                    out.append(p)
        return sorted(set(out))

    def delta(self, x, A):
        lengths = [len(p) - 1 for p in self.direct_paths(x, A) if len(p) >= 3]
        return min(lengths) if lengths else None

    def gate(self, X, A) -> frozenset:
        return frozenset(p[-1] for x in X for p in self.direct_paths(x, A))

    def crosses(self, p, B) -> bool:
        if set(p) & B:
            return True
        return any(self.interval(p[i], p[i + 1]) & B for i in range(len(p) - 1))

    def independent(self, A, B, C) -> bool:
        Bc = set(self.closure(B))
        C = set(C)
        for a in A:
            for p in self.zigzags_from(a, self._bound()):
                if p[-1] in C and not self.crosses(p, Bc):
                    return False
        return True


def naive_validate(g: Geometry) -> list[str]:
    """Names of the violated geometry axioms, checked pair by pair."""
    nv = Naive(g)
    V, L, n = nv.V, g.layers, g.n
    bad = []
    if any(nv.lt(x, x) for x in V):
        bad.append("irreflexivity")
    if any(nv.lt(x, y) and nv.lt(y, z) and not nv.lt(x, z) for x in V for y in V for z in V):
        bad.append("transitivity")
    if any(not -1 <= L[x] <= n + 1 for x in V):
        bad.append("layer-range")
    if any(nv.lt(x, y) and not L[x] < L[y] for x in V for y in V):
        bad.append("layer-monotonicity")
    if g.size < 2 or L[0] != -1 or L[1] != n + 1:
        bad.append("bounds")
    elif not all(nv.le(0, x) and nv.le(x, 1) for x in V):
        bad.append("bounds")
    if [x for x in V if L[x] == -1] != [0] or [x for x in V if L[x] == n + 1] != [1]:
        bad.append("unique-bounds")
    return bad


def naive_is_iso(g: Geometry, h: Geometry, mapping: dict) -> bool:
    """Layer and order preserving bijection between closed subsets."""
    ng, nh = Naive(g), Naive(h)
    if len(set(mapping.values())) != len(mapping):
        return False
    if any(g.layers[u] != h.layers[v] for u, v in mapping.items()):
        return False
    if any(ng.lt(u, w) != nh.lt(mapping[u], mapping[w]) for u in mapping for w in mapping):
        return False
    return ng.is_closed(mapping) and nh.is_closed(mapping.values())


# -- simple connectivity ---------------------------------------------------------


def _cycle_search(nv: Naive, bound: int) -> tuple | None:
    # Closed zigzags x0..x(2n)=x0 with the conditions read cyclically; repeats allowed.
    for start in nv.V:
        stack = [[start]]
        while stack:
            seq = stack.pop()
            if len(seq) - 1 >= 6 and seq[-1] == start and (len(seq) - 1) % 2 == 0:
                cyc = seq[:-1]
                m = len(cyc)
                if all(nv.is_zigzag([cyc[(i - 1) % m], cyc[i], cyc[(i + 1) % m]]) for i in range(m)):
                    return tuple(cyc)
            if len(seq) - 1 >= bound:
                continue
            for y in reversed(nv.V):
                if y != seq[-1] and nv.comp(seq[-1], y) and nv.is_zigzag(seq[-2:] + [y]):
                    stack.append(seq + [y])
    return None


def simply_connected_3way(g: Geometry) -> tuple[bool, bool, bool]:
    """Evaluate the three equivalent conditions separately.

    (a) no zigzag cycle, (b) zigzags of length >= 2 have incomparable
    endpoints, (c) every zigzag stays between the meet and the join of its
    endpoints.  Searches allow repeated vertices up to length 2|V|.
    """
    nv = Naive(g)
    if not nv.is_lattice():
        raise ContractError("simply_connected_3way needs a lattice")
    bound = 2 * g.size
    no_cycle = _cycle_search(nv, bound) is None
    incomparable, bounded = True, True
    for x in nv.V:
        for p in nv.zigzags_from(x, bound):
            lo, hi = nv.inf(p[0], p[-1]), nv.sup(p[0], p[-1])
            if len(p) >= 3 and nv.comp(p[0], p[-1]):
                incomparable = False
            if not all(nv.le(lo, v) and nv.le(v, hi) for v in p):
                bounded = False
    return no_cycle, incomparable, bounded


def naive_cycle(g: Geometry) -> tuple | None:
    """A zigzag cycle found by unrestricted bounded search, or None."""
    return _cycle_search(Naive(g), 2 * g.size)


# -- enumeration ------------------------------------------------------------------


def _down_sets(le: list[list[bool]], k: int) -> Iterator[frozenset]:
    for mask in range(1 << k):
        S = {i for i in range(k) if mask >> i & 1}
        if all(j in S for i in S for j in range(k) if le[j][i]):
            yield frozenset(S)


def canonical_form(lt: np.ndarray, labels=None) -> tuple:
    """Minimal encoding of a labelled strict order over all relabellings.

    Vertices are first split into classes by (label, #below, #above) and only
    permutations inside classes are tried.
    """
    k = lt.shape[0]
    labels = [0] * k if labels is None else list(labels)
    sig = [(labels[v], int(lt[:, v].sum()), int(lt[v].sum())) for v in range(k)]
    classes = sorted(set(sig))
    groups = [[v for v in range(k) if sig[v] == c] for c in classes]
    best = None
    for parts in itertools.product(*(itertools.permutations(gr) for gr in groups)):
        order = [v for part in parts for v in part]
        code = tuple(bool(lt[order[i], order[j]]) for i in range(k) for j in range(k))
        if best is None or code < best:
            best = code
    return (tuple(sig[v] for gr in groups for v in gr), best)


def _posets(k: int) -> list[np.ndarray]:
    """Strict partial orders on k points, one per isomorphism class."""
    level = [np.zeros((0, 0), dtype=bool)]
    for size in range(1, k + 1):
        seen, nxt = set(), []
        for lt in level:
            m = size - 1
            le = (lt | np.eye(m, dtype=bool)).tolist()
            for D in _down_sets(le, m):
                new = np.zeros((size, size), dtype=bool)
                new[:m, :m] = lt
                for i in D:
                    new[i, m] = True
                key = canonical_form(new)
                if key not in seen:
                    seen.add(key)
                    nxt.append(new)
        level = nxt
    return level


def _bounded(inner: np.ndarray) -> np.ndarray:
    k = inner.shape[0]
    lt = np.zeros((k + 2, k + 2), dtype=bool)
    lt[2:, 2:] = inner
    lt[0, 1:] = True
    lt[2:, 1] = True
    return lt


def _heights(lt: np.ndarray) -> list[int]:
    size = lt.shape[0]
    h = [0] * size
    for _ in range(size):
        for x in range(size):
            for y in range(size):
                if lt[x, y] and h[y] < h[x] + 1:
                    h[y] = h[x] + 1
    return h


def _layerings(lt: np.ndarray, n: int) -> Iterator[list[int]]:
    """Layer maps of a bounded order (bottom 0, top 1) valid for N = n."""
    size = lt.shape[0]
    inner = list(range(2, size))
    preds = {v: [u for u in inner if lt[u, v]] for v in inner}
    h = _heights(lt)
    order = sorted(inner, key=lambda v: h[v])
    layers = [-1, n + 1] + [0] * (size - 2)

    def rec(i):
        if i == len(order):
            yield list(layers)
            return
        v = order[i]
        lo = max((layers[u] + 1 for u in preds[v]), default=0)
        for s in range(lo, n + 1):
            layers[v] = s
            yield from rec(i + 1)

    yield from rec(0)


def estimate_cost(max_vertices: int) -> str:
    # OEIS A000112 grows roughly like 2^(k^2/4); report the labelled search size.
    k = max(0, max_vertices - 2)
    return f"~{2 ** (k * k // 4) * math.factorial(k):.3g} candidate relabellings"


def enumerate_structures(spec: EnumerationSpec) -> Iterator[Geometry]:
    """All structures of the requested kind up to isomorphism, smallest first.

    ``posets`` yields every poset (no bounds added; layers are heights).
    ``lattices`` yields every bounded lattice, layered by height.
    ``ngeometries`` yields every N-geometry lattice for ``spec.n_param``.
    """
    if spec.max_vertices > EXHAUSTIVE_BOUND:
        raise InputError(f"exhaustive enumeration is limited to {EXHAUSTIVE_BOUND} vertices "
                         f"({spec.max_vertices} requested: {estimate_cost(spec.max_vertices)})")
    if spec.constraint is Kind.ALL_POSETS:
        for k in range(1, spec.max_vertices + 1):
            for lt in _posets(k):
                h = _heights(lt)
                yield Geometry(max(h) - 1, [x - 1 for x in h], lt)
        return
    for size in range(2, spec.max_vertices + 1):
        seen = set()
        for inner in _posets(size - 2):
            lt = _bounded(inner)
            probe = Geometry(0, [0] * size, lt)
            if not Naive(probe).is_lattice():
                continue
            if spec.constraint is Kind.LATTICES:
                h = _heights(lt)
                n = h[1] - 2
                yield Geometry(n, [x - 1 for x in h], lt)
                continue
            for layers in _layerings(lt, spec.n_param):
                key = canonical_form(lt, layers)
                if key in seen:
                    continue
                seen.add(key)
                yield Geometry(spec.n_param, layers, lt)


def same_structure(g: Geometry, h: Geometry) -> bool:
    """Isomorphism test for small layered orders via canonical forms."""
    return (g.n == h.n and g.size == h.size
            and canonical_form(g.lt, g.layers) == canonical_form(h.lt, h.layers))


def random_fragment(n_param: int, steps: int, seed: int) -> Geometry:
    """Seeded random constructible fragment (test-input generator)."""
    from .construction import BuildSchedule, Policy, build_universal
    g, _ = build_universal(BuildSchedule(n_param, steps, seed, Policy.SEEDED_RANDOM))
    return g
