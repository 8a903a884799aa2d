"""Null ensembles and selection baselines for backbone validation.

The null models answer "is the real graph's independence number small for
its size?" by comparing against (a) Erdos-Renyi graphs with the exact same
edge count and (b) degree-preserving rewirings of the real graph. The
baselines answer "would a generic diversity heuristic find the same
backbone?" via farthest-first k-center and greedy facility location.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .mis import SearchTimeout, solve


@dataclass
class NullEnsembleStats:
    model: str
    trials: int
    real_alpha: int
    alpha_values: list[int]  # one per completed trial
    empirical_p: float
    flagged: list[int] = field(default_factory=list)  # insufficient swap mixing
    timed_out: int = 0
    samples: list[Graph] | None = None

    def to_dict(self) -> dict:
        hist: dict[str, int] = {}
        for a in self.alpha_values:
            hist[str(a)] = hist.get(str(a), 0) + 1
        return {
            "model": self.model,
            "trials": self.trials,
            "real_alpha": self.real_alpha,
            "alpha_histogram": hist,
            "empirical_p": self.empirical_p,
            "flagged_trials": self.flagged,
            "timed_out_trials": self.timed_out,
        }


def _empirical_p(real_alpha: int, alphas: list[int]) -> float:
    # add-one smoothing keeps p > 0 even when no null trial ties the real value
    hits = sum(1 for a in alphas if a <= real_alpha)
    return (hits + 1) / (len(alphas) + 1)


def trial_rng(seed: int, trial: int) -> random.Random:
    """Per-trial stream: reproducible in isolation, independent of trial count."""
    return random.Random(f"{seed}/{trial}")


def er_null(
    g: Graph,
    trials: int,
    seed: int,
    real_alpha: int | None = None,
    time_limit: float | None = None,
    keep_samples: bool = False,
) -> NullEnsembleStats:
    """G(n, m) ensemble: uniform graphs with exactly g.m edges."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if real_alpha is None:
        real_alpha = solve(g).alpha
    all_pairs = [(i, j) for i in range(g.n) for j in range(i + 1, g.n)]
    if g.m > len(all_pairs):
        raise ValueError("more edges than vertex pairs")
    alphas = []
    timed_out = 0
    samples = [] if keep_samples else None
    for t in range(trials):
        rng = trial_rng(seed, t)
        h = Graph(g.n, rng.sample(all_pairs, g.m))
        try:
            res = solve(h, time_limit=time_limit)
            if not res.exact:
                timed_out += 1
                continue
        except SearchTimeout:
            timed_out += 1
            continue
        alphas.append(res.alpha)
        if samples is not None:
            samples.append(h)
    return NullEnsembleStats(
        model="er",
        trials=trials,
        real_alpha=real_alpha,
        alpha_values=alphas,
        empirical_p=_empirical_p(real_alpha, alphas),
        timed_out=timed_out,
        samples=samples,
    )


def _double_edge_swaps(g: Graph, rng: random.Random, target_swaps: int):
    """Degree-preserving rewiring; returns (edge list, accepted swap count)."""
    edges = [tuple(e) for e in g.edges]
    present = set(edges)
    accepted = 0
    attempts = 0
    max_attempts = max(100 * target_swaps, 1000)
    while accepted < target_swaps and attempts < max_attempts:
        attempts += 1
        i1 = rng.randrange(len(edges))
        i2 = rng.randrange(len(edges))
        if i1 == i2:
            continue
        a, b = edges[i1]
        c, d = edges[i2]
        if rng.random() < 0.5:
            c, d = d, c
        # swap to (a,c), (b,d); reject anything that breaks simplicity
        if len({a, b, c, d}) != 4:
            continue
        e1 = (min(a, c), max(a, c))
        e2 = (min(b, d), max(b, d))
        if e1 in present or e2 in present:
            continue
        present.discard(edges[i1])
        present.discard(edges[i2])
        edges[i1] = e1
        edges[i2] = e2
        present.add(e1)
        present.add(e2)
        accepted += 1
    return edges, accepted


def config_null(
    g: Graph,
    trials: int,
    seed: int,
    real_alpha: int | None = None,
    time_limit: float | None = None,
    keep_samples: bool = False,
) -> NullEnsembleStats:
    """Degree-preserving ensemble via double-edge swaps.

    Each trial rewires a fresh copy until 10 * |E| swaps are accepted;
    trials that cannot reach that mixing budget are flagged but still
    scored (their degree sequence is preserved regardless).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if real_alpha is None:
        real_alpha = solve(g).alpha
    target_swaps = 10 * g.m
    alphas = []
    flagged = []
    timed_out = 0
    samples = [] if keep_samples else None
    for t in range(trials):
        rng = trial_rng(seed, t)
        edges, accepted = _double_edge_swaps(g, rng, target_swaps)
        h = Graph(g.n, edges)
        if accepted < target_swaps:
            flagged.append(t)
        try:
            res = solve(h, time_limit=time_limit)
            if not res.exact:
                timed_out += 1
                continue
        except SearchTimeout:
            timed_out += 1
            continue
        alphas.append(res.alpha)
        if samples is not None:
            samples.append(h)
    return NullEnsembleStats(
        model="config",
        trials=trials,
        real_alpha=real_alpha,
        alpha_values=alphas,
        empirical_p=_empirical_p(real_alpha, alphas),
        flagged=flagged,
        timed_out=timed_out,
        samples=samples,
    )


def _check_square(mat: np.ndarray, n: int, name: str) -> np.ndarray:
    m = np.asarray(mat, dtype=np.float64)
    if m.shape != (n, n):
        raise ValueError(f"{name} must be {n}x{n}")
    if not np.allclose(m, m.T, atol=1e-9):
        raise ValueError(f"{name} must be symmetric")
    return m


def k_center_select(dist: np.ndarray, size: int) -> list[int]:
    """Farthest-first traversal: start at the point with the largest total
    distance, then repeatedly add the point farthest from the selection.
    Ties resolve to the lowest index (np.argmax's first hit)."""
    n = dist.shape[0]
    d = _check_square(dist, n, "dist")
    if not 1 <= size <= n:
        raise ValueError("size out of range")
    start = int(np.argmax(d.sum(axis=1)))
    chosen = [start]
    mind = d[start].copy()
    while len(chosen) < size:
        nxt = int(np.argmax(mind))
        chosen.append(nxt)
        mind = np.minimum(mind, d[nxt])
    return chosen


def facility_location_select(sim: np.ndarray, size: int) -> list[int]:
    """Greedy facility location: maximize sum_u max_{c in S} sim[u, c],
    adding the best marginal candidate each round (ties to lowest index)."""
    n = sim.shape[0]
    s = _check_square(sim, n, "sim")
    if not 1 <= size <= n:
        raise ValueError("size out of range")
    coverage = np.full(n, -np.inf)
    chosen: list[int] = []
    for _ in range(size):
        best_gain = -np.inf
        best_c = -1
        for c in range(n):
            if c in chosen:
                continue
            gain = float(np.sum(np.maximum(coverage, s[:, c])) - np.sum(
                np.where(np.isfinite(coverage), coverage, 0.0)))
            if gain > best_gain:
                best_gain = gain
                best_c = c
        chosen.append(best_c)
        coverage = np.maximum(coverage, s[:, best_c])
    return chosen


def overlap(a: list[int], b: list[int]) -> float:
    """|a intersect b| / |b|; 0.0 when b is empty."""
    if not b:
        return 0.0
    return len(set(a) & set(b)) / len(set(b))


def adjacency_violations(g: Graph, s: list[int]) -> int:
    """Number of graph edges with both endpoints inside s."""
    ss = set(s)
    return sum(1 for (u, v) in g.edges if u in ss and v in ss)


def hop_distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs shortest-path hop counts (BFS); disconnected pairs get
    n (one beyond any realizable path length)."""
    n = g.n
    adj = [[] for _ in range(n)]
    for (u, v) in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    out = np.full((n, n), float(n))
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = [s]
        while q:
            nq = []
            for u in q:
                for w in adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nq.append(w)
            q = nq
        for t in range(n):
            if dist[t] >= 0:
                out[s, t] = float(dist[t])
    return out
