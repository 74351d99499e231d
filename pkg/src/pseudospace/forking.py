"""Finite checks of the forking axioms for zigzag independence.

Each check takes one concrete instance and returns an :class:`AxiomCheck`.
``vacuous`` marks instances where the hypothesis of an implication fails,
so callers can count the informative ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .amalgam import free_amalgam
from .closure import closure, gate, independent, is_closed
from .errors import ContractError
from .iso import PartialIso, check_iso, extend_iso
from .order import Geometry, is_lattice
from .zigzag import zigzag_cycle


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    vacuous: bool = False
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _ind(g, A, B, C) -> bool:
    return bool(independent(g, A, B, C))


def invariance(g: Geometry, A, B, C, rng: random.Random) -> AxiomCheck:
    """Independence is preserved by a random relabelling fixing the bounds."""
    rest = list(range(2, g.size))
    rng.shuffle(rest)
    perm = [0, 1] + rest
    h = g.relabel(perm)
    img = lambda S: {perm[v] for v in S}  # noqa: E731
    before, after = _ind(g, A, B, C), _ind(h, img(A), img(B), img(C))
    return AxiomCheck(before == after, detail={"value": before, "perm": perm})


def local_character(g: Geometry, X, C) -> AxiomCheck:
    """Shrink C greedily to C0 with gate(X/cl(C)) inside cl(C0), then test X ind_{C0} C."""
    Cc = closure(g, C)
    gt = gate(g, X, Cc)
    c0 = set(C)
    for v in sorted(C):
        trial = c0 - {v}
        if gt <= closure(g, trial):
            c0 = trial
    ok = gt <= closure(g, c0) and _ind(g, X, c0, C)
    return AxiomCheck(ok, detail={"c0": sorted(c0), "gate": sorted(gt)})


def transitivity(g: Geometry, X, B, C, D) -> AxiomCheck:
    """For B <= C <= D: X ind_B D iff (X ind_B C and X ind_C D); then the gates agree."""
    Bc, Cc, Dc = closure(g, B), closure(g, C), closure(g, D)
    if not (Bc <= Cc <= Dc):
        raise ContractError("transitivity needs nested sets B <= C <= D")
    left = _ind(g, X, B, C) and _ind(g, X, C, D)
    whole = _ind(g, X, B, D)
    gates = [sorted(gate(g, X, S)) for S in (Bc, Cc, Dc)]
    ok = left == whole
    if left:
        ok = ok and gates[0] == gates[1] == gates[2]
    return AxiomCheck(ok, vacuous=not left, detail={"gates": gates})


def monotony(g: Geometry, A, B, C, C_sub) -> AxiomCheck:
    if not set(C_sub) <= set(C):
        raise ContractError("monotony needs C' inside C")
    hyp = _ind(g, A, B, C)
    ok = not hyp or _ind(g, A, B, C_sub)
    return AxiomCheck(ok, vacuous=not hyp)


@dataclass
class FreeCopy:
    """The amalgam cl(XB)' (x) cl(C) over cl(B) and its maps into the ambient."""

    amalgam: Geometry
    copy_ids: dict      # cl(XB) in g -> its copy in the amalgam
    c_ids: dict         # cl(C) in g -> amalgam


def free_copy(g: Geometry, X, B, C) -> FreeCopy:
    """Glue a copy of cl(XB) to cl(C) freely over cl(B)."""
    Bc = closure(g, B)
    Cc = closure(g, set(C) | Bc)
    D = closure(g, set(X) | Bc)
    gc_, c_old = g.induced(Cc)
    gd, d_old = g.induced(D)
    c_new = {v: i for i, v in enumerate(c_old)}
    d_new = {v: i for i, v in enumerate(d_old)}
    b_map = {c_new[b]: d_new[b] for b in Bc}
    am, emb = free_amalgam(gc_, gd, b_map)
    return FreeCopy(am, {v: emb[d_new[v]] for v in D}, {v: c_new[v] for v in Cc})


def _embed(fc: FreeCopy, g: Geometry, prefer_existing: bool) -> PartialIso:
    # Embed the amalgam into (a growth of) g, fixing cl(C).
    p = PartialIso(fc.amalgam, g, {a: v for v, a in fc.c_ids.items()})
    for v in sorted(fc.copy_ids.values()):
        p = extend_iso(p, v, grow=True, prefer_existing=prefer_existing)
    return p


def existence(g: Geometry, X, B, C) -> AxiomCheck:
    """Build X' with the type of X over cl(B) and X' independent from C over B.

    The amalgam must be a simply connected lattice in which both glued parts
    are closed and the copy is free from cl(C); it is then embedded in a
    growth of g over cl(C).
    """
    fc = free_copy(g, X, B, C)
    am = fc.amalgam
    copy_set = frozenset(fc.copy_ids.values())
    c_set = frozenset(fc.c_ids.values())
    b_set = copy_set & c_set
    detail = {
        "lattice": bool(is_lattice(am)),
        "simply_connected": zigzag_cycle(am) is None,
    }
    if not (detail["lattice"] and detail["simply_connected"]):
        return AxiomCheck(False, detail=detail)
    detail["parts_closed"] = bool(is_closed(am, copy_set)) and bool(is_closed(am, c_set))
    detail["free"] = bool(independent(am, copy_set, b_set, c_set, "free"))
    p = _embed(fc, g, True)
    g2 = p.target_g
    xs = {p.mapping[fc.copy_ids[x]] for x in X}
    detail["embedded_independent"] = _ind(g2, xs, B, C)
    over_b = PartialIso(g, g2, {v: p.mapping[a] for v, a in fc.copy_ids.items()})
    detail["same_type_over_cl_b"] = bool(check_iso(over_b)) and all(
        over_b.mapping[b] == b for b in closure(g, B))
    return AxiomCheck(all(detail.values()), detail=detail)


def boundedness(g: Geometry, X, B, C) -> AxiomCheck:
    """Two independent realisations over cl(B) give isomorphic unions over cl(C)."""
    fc = free_copy(g, X, B, C)
    p1 = _embed(fc, g, True)
    p2 = _embed(fc, p1.target_g, False)
    g2 = p2.target_g
    first = {v: p1.mapping[a] for v, a in fc.copy_ids.items()}
    second = {v: p2.mapping[a] for v, a in fc.copy_ids.items()}
    Cc = closure(g, set(C) | closure(g, B))
    phi = {v: v for v in Cc}
    for v in first:
        phi[first[v]] = second[v]
    xs1 = {first[x] for x in X}
    xs2 = {second[x] for x in X}
    detail = {
        "distinct": xs1 != xs2 or set(X) <= Cc,
        "independent": _ind(g2, xs1, B, C) and _ind(g2, xs2, B, C),
        "iso_over_cl_c": bool(check_iso(PartialIso(g2, g2, phi))),
    }
    return AxiomCheck(all(detail.values()), detail=detail)
