import math

import pytest

from mislab.graph import (
    Graph,
    euclidean,
    geometric_adjacency,
    graph_to_json,
    normalize_edges,
    udg_check,
)


def test_normalize_edges_dedupes_and_orients():
    assert normalize_edges([(2, 1), (1, 2), (0, 3)]) == [(0, 3), (1, 2)]


def test_self_loop_rejected():
    with pytest.raises(ValueError, match="self-loop"):
        Graph(n=3, edges=[(1, 1)])


def test_edge_out_of_range_rejected():
    with pytest.raises(ValueError, match="out of range"):
        Graph(n=3, edges=[(0, 3)])


def test_density_formula():
    g = Graph(n=5, edges=[(0, 1), (1, 2), (2, 3)])
    assert g.density() == 2 * 3 / (5 * 4)
    assert Graph(n=1, edges=[]).density() == 0.0


def test_density_permutation_invariant():
    g = Graph(n=4, edges=[(0, 1), (1, 2)])
    # relabel by the permutation 0<->3
    h = Graph(n=4, edges=[(3, 2), (2, 1)])
    assert g.density() == h.density()


def test_adjacency_bitsets_and_degrees():
    g = Graph(n=4, edges=[(0, 1), (0, 2), (2, 3)])
    adj = g.adjacency_bitsets()
    assert adj[0] == (1 << 1) | (1 << 2)
    assert adj[3] == 1 << 2
    assert g.degrees() == [2, 1, 2, 1]


def test_is_independent_set():
    g = Graph(n=4, edges=[(0, 1), (2, 3)])
    assert g.is_independent_set([0, 2])
    assert g.is_independent_set([])
    assert not g.is_independent_set([2, 3])


def test_delete_vertex_relabels():
    g = Graph(n=4, edges=[(0, 1), (1, 2), (2, 3)])
    h = g.delete_vertex(1)
    assert h.n == 3
    assert h.edges == [(1, 2)]  # old (2,3) shifts down


def test_induced_subgraph():
    g = Graph(n=5, edges=[(0, 1), (1, 2), (3, 4)])
    h = g.induced_subgraph([1, 2, 4])
    assert h.n == 3
    assert h.edges == [(0, 1)]  # old (1,2) in new labels


def test_save_load_roundtrip(tmp_path):
    g = Graph(
        n=3,
        edges=[(0, 2)],
        labels=["a", "b", "c"],
        coords=[(0.0, 0.0), (1.0, 0.5), (2.0, 1.0)],
        metadata={"family": "toy"},
    )
    p = tmp_path / "g.json"
    g.save(p)
    h = Graph.load(p)
    assert h.n == g.n and h.edges == g.edges
    assert h.labels == g.labels and h.coords == g.coords
    assert h.metadata == g.metadata
    # canonical serialization is stable
    assert graph_to_json(h) == p.read_text()


def test_euclidean():
    assert euclidean((0, 0), (3, 4)) == 5.0
    assert euclidean((0, 0, 0), (1, 2, 2)) == 3.0


def test_geometric_adjacency_threshold_inclusive():
    pts = [(0.0, 0.0), (1.0, 0.0), (2.5, 0.0)]
    g = geometric_adjacency(pts, radius=1.5)
    assert g.edges == [(0, 1), (1, 2)]
    # boundary distance exactly equal to the radius is an edge
    g2 = geometric_adjacency([(0.0, 0.0), (1.5, 0.0)], radius=1.5)
    assert g2.edges == [(0, 1)]


def test_geometric_adjacency_validation():
    with pytest.raises(ValueError):
        geometric_adjacency([], radius=1.0)
    with pytest.raises(ValueError):
        geometric_adjacency([(0.0, 0.0)], radius=0.0)
    with pytest.raises(ValueError):
        geometric_adjacency([(0.0, 0.0), (1.0, 1.0, 1.0)], radius=1.0)


def test_udg_check_roundtrip_and_recall():
    pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
    g = geometric_adjacency(pts, radius=1.0)
    chk = udg_check(g, pts, 1.0)
    assert chk.missing_edges == [] and chk.extra_edges == []
    assert chk.recall == 1.0


def test_udg_check_missing_and_extra():
    pts = [(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]
    g = Graph(n=3, edges=[(0, 2)])  # claimed edge too long, real edge absent
    chk = udg_check(g, pts, 1.0)
    assert chk.missing_edges == [(0, 2)]
    assert chk.extra_edges == [(0, 1)]
    assert chk.recall == 0.0


def test_udg_check_edgeless_recall_one():
    pts = [(0.0, 0.0), (5.0, 5.0)]
    g = Graph(n=2, edges=[])
    assert udg_check(g, pts, 1.0).recall == 1.0


def test_udg_check_length_mismatch():
    g = Graph(n=2, edges=[])
    with pytest.raises(ValueError):
        udg_check(g, [(0.0, 0.0)], 1.0)
