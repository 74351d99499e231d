"""Free amalgamation of two geometries over a common closed part."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .closure import is_closed
from .errors import ContractError
from .order import Geometry


def check_gluing(ga: Geometry, gc: Geometry, b_map: Mapping[int, int]) -> None:
    """Raise unless b_map is a layer- and order-isomorphism of closed subsets."""
    if ga.n != gc.n:
        raise ContractError(f"N differs: {ga.n} vs {gc.n}")
    items = sorted(b_map.items())
    ga.check_vertex(*(u for u, _ in items))
    gc.check_vertex(*(v for _, v in items))
    if len({v for _, v in items}) != len(items):
        raise ContractError("gluing map is not injective")
    for u, v in items:
        if ga.layers[u] != gc.layers[v]:
            raise ContractError(f"layer of {u} differs from layer of {v}", (u, v))
    for u, v in items:
        for u2, v2 in items:
            if ga.less(u, u2) != gc.less(v, v2):
                raise ContractError(f"order between {u},{u2} not preserved", ((u, u2), (v, v2)))
    for g, S, side in ((ga, set(b_map), "A"), (gc, set(b_map.values()), "C")):
        verdict = is_closed(g, S)
        if not verdict:
            raise ContractError(f"glued part is not closed in {side}", verdict.witness)


def free_amalgam(ga: Geometry, gc: Geometry, b_map: Mapping[int, int]) -> tuple[Geometry, dict[int, int]]:
    """Glue ga and gc along b_map so that comparabilities across factor through B.

    Vertices of ga keep their ids; the vertices of gc outside the glued part
    are appended in ascending id order.  Returns the amalgam and the
    embedding of gc into it.
    """
    b_map = {int(u): int(v) for u, v in b_map.items()}
    check_gluing(ga, gc, b_map)
    emb_c = {v: u for u, v in b_map.items()}
    extra = [v for v in gc.vertices if v not in emb_c]
    for i, v in enumerate(extra):
        emb_c[v] = ga.size + i
    size = ga.size + len(extra)
    cidx = np.array([emb_c[v] for v in gc.vertices])

    lt = np.zeros((size, size), dtype=bool)
    lt[:ga.size, :ga.size] = ga.lt
    lt[np.ix_(cidx, cidx)] |= gc.lt
    # a < c across: a <= b in ga and b <= c in gc for some glued b (and dually)
    bs = sorted(b_map)
    le_a = ga.lt | np.eye(ga.size, dtype=bool)
    le_c = gc.lt | np.eye(gc.size, dtype=bool)
    a_to_b = le_a[:, bs].astype(np.int64)                      # a <= b
    b_to_c = le_c[[b_map[b] for b in bs], :].astype(np.int64)  # b <= c
    up = (a_to_b @ b_to_c) > 0
    c_to_b = le_c[:, [b_map[b] for b in bs]].astype(np.int64)  # c <= b
    b_to_a = le_a[bs, :].astype(np.int64)                      # b <= a
    down = (c_to_b @ b_to_a) > 0
    a_rows = np.arange(ga.size)
    lt[np.ix_(a_rows, cidx)] |= up
    lt[np.ix_(cidx, a_rows)] |= down
    np.fill_diagonal(lt, False)
    layers = list(ga.layers) + [gc.layers[v] for v in extra]
    return Geometry(ga.n, layers, lt), emb_c
