"""Isomorphisms between closed subsets and the back-and-forth extension game."""

from __future__ import annotations

from dataclasses import dataclass, field

from .closure import BOUNDS, _closed, _delta, _floor, _ceil, construction_order, is_closed
from .construction import ExtensionType, simple_extension
from .errors import ContractError, PseudospaceError
from .order import Geometry, open_interval


@dataclass(frozen=True)
class PartialIso:
    source_g: Geometry
    target_g: Geometry
    mapping: dict

    @property
    def source(self) -> frozenset:
        return frozenset(self.mapping)

    @property
    def target(self) -> frozenset:
        return frozenset(self.mapping.values())

    def inverse(self) -> "PartialIso":
        return PartialIso(self.target_g, self.source_g, {v: u for u, v in self.mapping.items()})

    @classmethod
    def identity(cls, g: Geometry, g2: Geometry, verts=BOUNDS) -> "PartialIso":
        return cls(g, g2, {v: v for v in verts})


@dataclass(frozen=True)
class IsoVerdict:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_iso(p: PartialIso) -> IsoVerdict:
    """Layer- and order-preserving bijection between closed sets."""
    g, g2, f = p.source_g, p.target_g, p.mapping
    try:
        g.check_vertex(*f)
        g2.check_vertex(*f.values())
    except PseudospaceError as exc:
        return IsoVerdict(False, ("unknown-vertex", str(exc)))
    if len(set(f.values())) != len(f):
        return IsoVerdict(False, ("not-injective",))
    for u in sorted(f):
        if g.layers[u] != g2.layers[f[u]]:
            return IsoVerdict(False, ("layer", u, f[u]))
    dom = sorted(f)
    for u in dom:
        for v in dom:
            if g.less(u, v) != g2.less(f[u], f[v]):
                return IsoVerdict(False, ("order", u, v))
    for side, geo, S in (("source", g, p.source), ("target", g2, p.target)):
        try:
            verdict = is_closed(geo, S)
        except ContractError as exc:
            return IsoVerdict(False, (f"{side}-ambient", str(exc), exc.witness))
        if not verdict:
            return IsoVerdict(False, (f"{side}-not-closed", verdict.witness))
    return IsoVerdict(True)


def _match(g2: Geometry, image: frozenset, t: ExtensionType) -> int | None:
    # Least vertex v' outside the image with image + v' closed and of type t.
    for u in sorted(open_interval(g2, t.a, t.b)):
        if u in image or g2.layers[u] != t.s:
            continue
        if _floor(g2, image, u) != t.a or _ceil(g2, image, u) != t.b:
            continue
        if _delta(g2, image, u) is None:
            return u
    return None


def extend_iso(p: PartialIso, v: int, grow: bool = False,
               prefer_existing: bool = True) -> PartialIso | None:
    """Extend p to a closed set containing v.

    The closure of source + v is constructed over the source one simple
    extension at a time; each step of type (a, b, s) is matched by a target
    vertex of type (f(a), f(b), s) keeping the image closed.  Existing
    vertices are tried first (least id), then, with ``grow``, the target
    geometry is enlarged by a fresh simple extension.  Returns None when no
    witness exists and growing is off.
    """
    g = p.source_g
    g.check_vertex(v)
    if v in p.mapping:
        return p
    _closed(g, p.source)
    g2 = p.target_g
    image = _closed(g2, p.target)
    f = dict(p.mapping)
    for entry in construction_order(g, {v}, base=p.source):
        t = ExtensionType(f[entry.type.a], f[entry.type.b], entry.type.s)
        w = _match(g2, image, t) if prefer_existing else None
        if w is None:
            if not grow:
                return None
            g2, w = simple_extension(g2, t)
        f[entry.v] = w
        image = image | {w}
    return PartialIso(g, g2, f)


@dataclass
class GameTrace:
    success: bool
    steps: list = field(default_factory=list)
    failure: dict | None = None
    iso: PartialIso | None = None

    def to_json(self) -> dict:
        out = {"success": self.success, "steps": self.steps, "failure": self.failure}
        if self.iso is not None:
            out["map"] = [[u, self.iso.mapping[u]] for u in sorted(self.iso.mapping)]
            out["sizes"] = [self.iso.source_g.size, self.iso.target_g.size]
        return out


def backforth_game(g: Geometry, g2: Geometry, depth: int, grow: bool = False) -> GameTrace:
    """Play ``depth`` rounds of forth and back moves starting from {bottom, top}.

    Each round extends the isomorphism to the least unmatched vertex of g,
    then (through the inverse) to the least unmatched vertex of g2.  With
    ``grow`` the opposite geometry may be enlarged to realise a move.
    """
    if g.n != g2.n:
        raise ContractError(f"N differs: {g.n} vs {g2.n}")
    trace = GameTrace(True)
    p = PartialIso.identity(g, g2)
    for rnd in range(1, depth + 1):
        for side in ("forth", "back"):
            cur = p if side == "forth" else p.inverse()
            todo = [u for u in cur.source_g.vertices if u not in cur.mapping]
            if not todo:
                trace.steps.append({"round": rnd, "side": side, "vertex": None})
                continue
            u = todo[0]
            try:
                nxt = extend_iso(cur, u, grow=grow)
            except ContractError as exc:
                trace.success = False
                witness = exc.witness.to_json() if hasattr(exc.witness, "to_json") else exc.witness
                trace.failure = {"round": rnd, "side": side, "vertex": u,
                                 "reason": str(exc), "code": exc.code, "witness": witness}
                trace.iso = p
                return trace
            if nxt is None:
                trace.success = False
                trace.failure = {"round": rnd, "side": side, "vertex": u,
                                 "reason": "no matching closed extension", "code": "E_NO_WITNESS",
                                 "witness": None}
                trace.iso = p
                return trace
            added = sorted(set(nxt.mapping) - set(cur.mapping))
            trace.steps.append({"round": rnd, "side": side, "vertex": u,
                                "added": [[w, nxt.mapping[w]] for w in added]})
            p = nxt if side == "forth" else nxt.inverse()
    verdict = check_iso(p)
    if not verdict:
        trace.success = False
        trace.failure = {"round": depth, "side": "final", "reason": "result is not an isomorphism",
                         "code": "E_NOT_ISO", "witness": list(verdict.witness)}
    trace.iso = p
    return trace
