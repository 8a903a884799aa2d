import numpy as np
import pytest

from tests.fixtures import planted_clusters
from mislab.graph import Graph
from mislab.mis import solve
from mislab.structure import (
    adjacency_violations,
    config_null,
    er_null,
    facility_location_select,
    hop_distance_matrix,
    k_center_select,
    overlap,
    trial_rng,
)
from mislab.textgraph import cosine_matrix
from tests.oracles import random_graph


def test_er_null_exact_edge_count():
    g = Graph(*random_graph("er/0"))
    stats = er_null(g, trials=10, seed=1, keep_samples=True)
    assert all(h.m == g.m and h.n == g.n for h in stats.samples)


def test_er_null_per_trial_stream_isolation():
    g = Graph(*random_graph("er/1"))
    a = er_null(g, trials=3, seed=9, keep_samples=True)
    b = er_null(g, trials=6, seed=9, keep_samples=True)
    # trial t is a pure function of (seed, t), not of the trial count
    assert [h.edges for h in a.samples] == [h.edges for h in b.samples[:3]]


def test_er_null_requires_trials():
    g = Graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        er_null(g, trials=0, seed=0)


def test_empirical_p_add_one_smoothing():
    g = Graph(3, [])  # every ER trial also has alpha 3
    hi = er_null(g, trials=9, seed=0, real_alpha=3)
    assert hi.empirical_p == 1.0
    lo = er_null(g, trials=9, seed=0, real_alpha=0)
    assert lo.empirical_p == 1 / 10


def test_config_null_preserves_degrees():
    g = Graph(*random_graph("cfg/0"))
    stats = config_null(g, trials=20, seed=4, keep_samples=True)
    want = sorted(g.degrees())
    for h in stats.samples:
        assert sorted(h.degrees()) == want


def test_config_null_flags_unmixable():
    star = Graph(5, [(0, i) for i in range(1, 5)])  # no valid swap exists
    stats = config_null(star, trials=5, seed=2)
    assert stats.flagged == list(range(5))


def test_trial_rng_stable():
    assert trial_rng(3, 7).random() == trial_rng(3, 7).random()


def test_k_center_farthest_first_line():
    pts = np.array([0.0, 1.0, 2.0, 10.0])
    dist = np.abs(pts[:, None] - pts[None, :])
    assert k_center_select(dist, 3) == [3, 0, 2]


def test_k_center_validation():
    with pytest.raises(ValueError, match="symmetric"):
        k_center_select(np.array([[0.0, 1.0], [2.0, 0.0]]), 1)
    with pytest.raises(ValueError, match="size"):
        k_center_select(np.zeros((3, 3)), 0)


def test_facility_location_covers_clusters():
    s = np.array([
        [1.0, 0.9, 0.1, 0.1],
        [0.9, 1.0, 0.1, 0.1],
        [0.1, 0.1, 1.0, 0.9],
        [0.1, 0.1, 0.9, 1.0],
    ])
    assert facility_location_select(s, 2) == [0, 2]


def test_overlap_and_violations():
    assert overlap([0, 1], [1, 2]) == 0.5
    assert overlap([0], []) == 0.0
    g = Graph(4, [(0, 1), (2, 3)])
    assert adjacency_violations(g, [0, 1, 2]) == 1
    assert adjacency_violations(g, [0, 2]) == 0


def test_hop_distance_matrix():
    g = Graph(4, [(0, 1), (1, 2)])  # vertex 3 isolated
    d = hop_distance_matrix(g)
    assert d[0, 2] == 2
    assert d[0, 3] == 4  # disconnected pairs get n
    assert np.all(d == d.T)


def test_planted_fixture_frozen_selections():
    g, emb = planted_clusters()
    res = solve(g)
    assert res.alpha == 4
    assert res.witness == [0, 5, 10, 15]
    sim = cosine_matrix(emb)
    kc = k_center_select(1.0 - sim, 4)
    fl = facility_location_select(sim, 4)
    assert kc == [3, 0, 5, 8]
    assert fl == [10, 0, 5, 3]
    assert adjacency_violations(g, kc) == 2
    assert adjacency_violations(g, fl) == 1
    assert adjacency_violations(g, res.witness) == 0
    assert overlap(kc, res.witness) == 0.5
    assert overlap(fl, res.witness) == 0.75
