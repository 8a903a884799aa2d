"""Exhaustive reference implementations, independent of the library solver.

The enumerator below walks every independent set once (no bounding, no
branching heuristics) so it cannot share a bug with the branch-and-bound
engine it is checking.
"""

from __future__ import annotations

import random


def brute_force_mis(n: int, edges: list[tuple[int, int]]) -> dict:
    """All maximum independent sets by plain candidate recursion."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    best_size = 0
    best_masks = [0]

    def rec(cand: int, cur: int, size: int) -> None:
        nonlocal best_size, best_masks
        if size > best_size:
            best_size = size
            best_masks = [cur]
        elif size == best_size and size > 0:
            best_masks.append(cur)
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            rec(cand & ~adj[v], cur | (1 << v), size + 1)

    rec((1 << n) - 1, 0, 0)
    optima = sorted(
        sorted(i for i in range(n) if m >> i & 1) for m in best_masks
    )
    core_mask = best_masks[0]
    for m in best_masks[1:]:
        core_mask &= m
    core = sorted(i for i in range(n) if core_mask >> i & 1)
    rho = 1.0 if best_size == 0 else len(core) / best_size
    return {"alpha": best_size, "optima": optima, "core": core, "rho": rho}


def random_graph(tag: str) -> tuple[int, list[tuple[int, int]]]:
    """Seeded test instance with N <= 20 and density in [0.05, 0.6]."""
    rng = random.Random(tag)
    n = rng.randint(4, 20)
    density = rng.uniform(0.05, 0.6)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = max(1, round(density * len(pairs)))
    return n, rng.sample(pairs, m)
