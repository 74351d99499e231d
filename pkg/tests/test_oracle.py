from __future__ import annotations

import pytest

from pseudospace import fixtures
from pseudospace.construction import trivial_geometry
from pseudospace.errors import ContractError, InputError
from pseudospace.io import dumps_geometry
from pseudospace.oracle import (EnumerationSpec, Kind, Naive, canonical_form,
                                enumerate_structures, naive_cycle, random_fragment,
                                same_structure, simply_connected_3way)
from pseudospace.order import is_lattice, validate_geometry
from pseudospace.zigzag import find_zigzag_cycle


def _of_size(spec, size):
    return [g for g in enumerate_structures(spec) if g.size == size]


def test_posets_on_three_points():
    assert len(_of_size(EnumerationSpec(3, Kind.ALL_POSETS), 3)) == 5


def test_poset_counts():
    # 1, 2, 5, 16 unlabelled posets on 1..4 points
    counts = [len(_of_size(EnumerationSpec(4, Kind.ALL_POSETS), k)) for k in range(1, 5)]
    assert counts == [1, 2, 5, 16]


def test_lattice_counts():
    counts = [len(_of_size(EnumerationSpec(7, Kind.LATTICES), k)) for k in range(2, 8)]
    assert counts == [1, 1, 2, 5, 15, 53]


@pytest.mark.parametrize("n", [0, 1, 3])
def test_two_vertex_geometry_only(n):
    assert _of_size(EnumerationSpec(2, Kind.N_GEOMETRY_LATTICES, n), 2) == [trivial_geometry(n)]


def test_hexagon_in_stream(hexagon):
    found = [g for g in _of_size(EnumerationSpec(8, Kind.N_GEOMETRY_LATTICES, 1), 8)
             if same_structure(g, hexagon)]
    assert len(found) == 1


def test_enumerated_geometries_valid():
    for g in enumerate_structures(EnumerationSpec(6, Kind.N_GEOMETRY_LATTICES, 2)):
        assert validate_geometry(g) == [] and is_lattice(g)


def test_enumeration_deterministic():
    spec = EnumerationSpec(6, Kind.N_GEOMETRY_LATTICES, 1)
    a = [dumps_geometry(g) for g in enumerate_structures(spec)]
    b = [dumps_geometry(g) for g in enumerate_structures(spec)]
    assert a == b and len(set(a)) == len(a)


def test_enumeration_refuses_large():
    with pytest.raises(InputError, match="candidate"):
        list(enumerate_structures(EnumerationSpec(9)))


def test_canonical_form_relabel_invariant(hexagon):
    h = hexagon.relabel([0, 1, 4, 2, 3, 7, 5, 6])
    assert canonical_form(h.lt, h.layers) == canonical_form(hexagon.lt, hexagon.layers)


def test_three_way_examples(hexagon):
    assert simply_connected_3way(hexagon) == (False, False, False)
    assert naive_cycle(hexagon) == (2, 5, 3, 6, 4, 7)
    assert simply_connected_3way(trivial_geometry(1)) == (True, True, True)
    assert simply_connected_3way(fixtures.stacked()) == (True, True, True)


def test_three_way_needs_lattice():
    g = fixtures.crown4()
    with pytest.raises(ContractError):
        simply_connected_3way(g)


def test_random_fragment_examples():
    assert random_fragment(1, 0, 5) == trivial_geometry(1)
    assert dumps_geometry(random_fragment(2, 10, 42)) == dumps_geometry(random_fragment(2, 10, 42))


def test_random_fragments_simply_connected():
    for seed in range(10):
        g = random_fragment(3, 40, seed)
        assert simply_connected_3way(g) == (True, True, True)


def test_cycle_searches_agree_small():
    for g in enumerate_structures(EnumerationSpec(7, Kind.N_GEOMETRY_LATTICES, 1)):
        assert (find_zigzag_cycle(g) is None) == (naive_cycle(g) is None)


def test_naive_meet_join(hexagon):
    nv = Naive(hexagon)
    assert nv.inf(5, 6) == 3 and nv.sup(2, 3) == 5 and nv.is_lattice()
