"""Small named geometries used by the tests, the docs and the CLI examples."""

from __future__ import annotations

import numpy as np

from .construction import ExtensionType, simple_extension, trivial_geometry
from .order import Geometry

# Hexagon ids: bottom 0, top 1, a0..a2 = 2..4, b0..b2 = 5..7.
HEX_NAMES = {"bot": 0, "top": 1, "a0": 2, "a1": 3, "a2": 4, "b0": 5, "b1": 6, "b2": 7}


def hexagon() -> Geometry:
    """The 6-crown a0<b0>a1<b1>a2<b2>a0 with bounds, N=1: a lattice with a zigzag cycle."""
    a0, a1, a2, b0, b1, b2 = 2, 3, 4, 5, 6, 7
    pairs = [(a0, b0), (a1, b0), (a1, b1), (a2, b1), (a2, b2), (a0, b2)]
    return Geometry.from_pairs(1, [-1, 2, 0, 0, 0, 1, 1, 1], pairs, bounded=True)


def siblings(n: int = 1, layer: int = 0) -> Geometry:
    """Bottom, top and two incomparable vertices 2, 3 of the given layer."""
    g = trivial_geometry(n)
    g, _ = simple_extension(g, ExtensionType(0, 1, layer))
    g, _ = simple_extension(g, ExtensionType(0, 1, layer))
    return g


def f1() -> Geometry:
    """N=3: a=2 of type (bot,top,0), b=3 of type (a,top,3), x=4 of type (a,b,1)."""
    g = trivial_geometry(3)
    g, a = simple_extension(g, ExtensionType(0, 1, 0))
    g, b = simple_extension(g, ExtensionType(a, 1, 3))
    g, _ = simple_extension(g, ExtensionType(a, b, 1))
    return g


def f1_siblings() -> Geometry:
    """F1 plus x'=5, a second vertex of type (a,b,1)."""
    g, _ = simple_extension(f1(), ExtensionType(2, 3, 1))
    return g


def stacked() -> Geometry:
    """F1 siblings plus y=6 of type (x',b,2) stacked on x'=5."""
    g, _ = simple_extension(f1_siblings(), ExtensionType(5, 3, 2))
    return g


def crown4() -> Geometry:
    """Unbounded 4-crown: minimal 0, 1 below maximal 2, 3 (not a geometry)."""
    lt = np.zeros((4, 4), dtype=bool)
    for x in (0, 1):
        for y in (2, 3):
            lt[x, y] = True
    return Geometry(1, [0, 0, 1, 1], lt)


def refinement_chain() -> Geometry:
    """N=2: a=2 (bot,top,0), m=3 (a,top,1), p=4 and q=5 of type (m,top,2)."""
    g = trivial_geometry(2)
    g, a = simple_extension(g, ExtensionType(0, 1, 0))
    g, m = simple_extension(g, ExtensionType(a, 1, 1))
    g, _ = simple_extension(g, ExtensionType(m, 1, 2))
    g, _ = simple_extension(g, ExtensionType(m, 1, 2))
    return g
