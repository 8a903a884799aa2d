"""Shared deterministic fixtures: planted-cluster graph and 12-regular instance."""

from __future__ import annotations

import math
import random

import numpy as np

from mislab.graph import Graph
from mislab.structure import _double_edge_swaps
from mislab.textgraph import EmbeddingMatrix


def planted_clusters() -> tuple[Graph, EmbeddingMatrix]:
    """Four disjoint 5-cliques whose vectors mislead diversity heuristics.

    Clique A (0-4) spans opposite poles of axis 0, clique B (5-9) spans two
    orthogonal axes, cliques C (10-14) and D (15-19) sit on correlated
    directions. Farthest-first and facility-location picks then land inside
    cliques while the exact MIS (one vertex per clique) never does.
    """
    edges = []
    for c in range(4):
        members = range(5 * c, 5 * c + 5)
        edges.extend((u, v) for u in members for v in members if u < v)
    g = Graph(n=20, edges=edges)

    rows = np.zeros((20, 5))
    rows[0:3, 0] = 1.0
    rows[3:5, 0] = -1.0
    rows[5:8, 1] = 1.0
    rows[8:10, 2] = 1.0
    rows[10:15, 3] = 1.0
    rows[15:20, 3] = 0.9
    rows[15:20, 4] = math.sqrt(0.19)
    emb = EmbeddingMatrix(labels=[f"u{i}" for i in range(20)], rows=rows)
    return g, emb


def twelve_regular(tag: str = "12reg/0", n: int = 75) -> Graph:
    """Random 12-regular instance: circulant C_n(1..6) plus degree-preserving
    double-edge swaps (10x|E| accepted moves)."""
    rng = random.Random(tag)
    edges = {tuple(sorted((i, (i + d) % n))) for i in range(n) for d in range(1, 7)}
    g = Graph(n=n, edges=sorted(edges))
    rewired, _ = _double_edge_swaps(g, rng, 10 * g.m)
    return Graph(n=n, edges=rewired)
