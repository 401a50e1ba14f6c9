import json
from itertools import combinations
from math import comb

import numpy as np
import pytest

from hammingperc.constructions import (
    cover_family,
    edge_percolating_set,
    replay_layers,
    vertex_percolating_set,
    vertex_weights,
)
from hammingperc.engine import close_edges, close_vertices
from hammingperc.formulas import me_nested_sum
from hammingperc.graphs import HammingGraph, materialize

EDGE_CASES = [(n, d, r) for n in range(2, 5) for d in range(1, 5) if n**d <= 4096 for r in range((n - 1) * d + 1)]


def test_trivial_and_named_cases():
    assert edge_percolating_set(3, 2, 0).size == 0
    assert edge_percolating_set(3, 0, 2).size == 0
    s = edge_percolating_set(3, 2, 3)
    assert s.size == 10
    s = edge_percolating_set(2, 3, 2)
    g = materialize(HammingGraph(2, 3))
    assert s.size == 5 and close_edges(g, s.edges, 2).percolated


@pytest.mark.parametrize("n,d", sorted({(n, d) for n, d, _ in EDGE_CASES}))
def test_edge_construction_size_and_percolation(n, d):
    g = materialize(HammingGraph(n, d))
    for r in range((n - 1) * d + 1):
        s = edge_percolating_set(n, d, r, g)
        assert s.size == me_nested_sum(n, d, r)
        assert len(set(s.edges.tolist())) == s.size
        assert close_edges(g, s.edges, r).percolated
        assert all(replay_layers(s, g))


def test_edge_provenance_adds_up():
    s = edge_percolating_set(3, 3, 4)
    prov = s.provenance
    assert sum(x["size"] for x in prov["layers"]) + prov["cross"]["size"] == s.size
    data = json.loads(s.to_json())
    assert data["mode"] == "edge" and data["size"] == s.size and data["indices"] == s.edges.tolist()


def test_cover_family_examples():
    assert cover_family(5, 1).size == 1
    f = cover_family(3, 2)
    assert f.size == 2 and f.covers_all()
    assert f.blocks == ((0, 1), (0, 2))
    assert cover_family(4, 3).size == 3
    with pytest.raises(ValueError):
        cover_family(2, 3)


@pytest.mark.parametrize("d", range(1, 13))
def test_cover_family_covers(d):
    for r in range(1, min(d, 5) + 1):
        f = cover_family(d, r)
        # independent check of the covering property
        need = set(combinations(range(d), r - 1))
        for b in f.blocks:
            assert len(b) == r and list(b) == sorted(set(b))
            need -= set(combinations(b, r - 1))
        assert not need
        assert f.size >= -(-comb(d, r - 1) // r)


def test_vertex_seed_shape():
    h = HammingGraph(3, 6)
    s = vertex_percolating_set(3, 6, 3)
    w = vertex_weights(h)
    assert len(s.W) == 2 * 6
    assert (w[s.W] == 1).all()
    for u in s.U:
        digits = h.decode(int(u))
        assert set(digits) <= {0, 1} and sum(digits) == 3
    assert s.size == s.expected_size
    s = vertex_percolating_set(3, 4, 2)
    assert s.W.tolist() == [0]
    s = vertex_percolating_set(2, 3, 1)
    assert s.size == 1 and len(s.W) == 0
    with pytest.raises(ValueError):
        vertex_percolating_set(3, 2, 3)


@pytest.mark.parametrize("n,d,r", [(2, 3, 1), (3, 4, 2), (3, 6, 3), (3, 2, 2), (4, 5, 4), (2, 8, 4)])
def test_vertex_construction_percolates(n, d, r):
    s = vertex_percolating_set(n, d, r)
    g = materialize(HammingGraph(n, d))
    assert close_vertices(g, s.vertices, r).percolated
    assert s.size == s.expected_size


def test_vertex_construction_small_dimension_gap():
    # d=r=4 on the 4-cube: seed = weight 2 plus the all-ones vertex; weight 3
    # then activates, but a weight-1 vertex sees only its 3 weight-2 neighbours
    s = vertex_percolating_set(2, 4, 4)
    g = materialize(HammingGraph(2, 4))
    st = close_vertices(g, s.vertices, 4)
    assert not st.percolated
    assert st.closure_size == 11


def test_vertex_json():
    s = vertex_percolating_set(3, 4, 3)
    data = json.loads(s.to_json())
    assert data["mode"] == "vertex" and data["size"] == s.size
    assert sorted(data["provenance"]["U"] + data["provenance"]["W"]) == data["indices"]
