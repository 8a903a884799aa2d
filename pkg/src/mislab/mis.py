"""Exact maximum-independent-set engine over Python int bitsets.

Branch and bound with a greedy clique-cover upper bound. The same search
core drives optimization, decision queries (is there an independent set of
a given size), exhaustive optimum enumeration with a cap, and per-vertex
core certification.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph

ENUM_CAP = 500


class SearchTimeout(Exception):
    """Raised internally when a time limit expires; callers see exact=False."""


class _Found(Exception):
    pass


class _CapHit(Exception):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    """Greedy clique cover of the subgraph induced by cand.

    An independent set uses at most one vertex per clique, so the number
    of cliques bounds the independence number from above. First-fit over
    ascending vertex index; each clique keeps the mask of vertices
    adjacent to all its members.
    """
    bound = 0
    commons: list[int] = []
    rest = cand
    while rest:
        b = rest & -rest
        rest ^= b
        av = adj[b.bit_length() - 1]
        for k, com in enumerate(commons):
            if com & b:
                commons[k] = com & av
                break
        else:
            commons.append(av & cand)
            bound += 1
    return bound


class _Search:
    """Shared B&B state. target set => decision mode with early exit."""

    def __init__(
        self,
        adj: list[int],
        time_limit: float | None = None,
        target: int | None = None,
    ) -> None:
        self.adj = adj
        self.best = (target - 1) if target is not None else -1
        self.best_mask = 0
        self.target = target
        self.nodes = 0
        self.time_limit = time_limit
        self.t0 = time.perf_counter()

    def _tick(self) -> None:
        self.nodes += 1
        if self.time_limit is not None and self.nodes % 4096 == 0:
            if time.perf_counter() - self.t0 > self.time_limit:
                raise SearchTimeout

    def _record(self, cur: int, size: int) -> None:
        if size > self.best:
            self.best = size
            self.best_mask = cur
            if self.target is not None and size >= self.target:
                raise _Found

    def expand(self, cand: int, cur: int, size: int) -> None:
        self._tick()
        if cand == 0:
            self._record(cur, size)
            return
        if size + _clique_cover_bound(cand, self.adj) <= self.best:
            return
        adj = self.adj
        # Scan candidate degrees: force isolated vertices in, apply the
        # degree-1 dominance rule, otherwise branch on the max-degree vertex.
        iso = 0
        bv = -1
        bd = -1
        one_v = -1
        rest = cand
        while rest:
            b = rest & -rest
            rest ^= b
            v = b.bit_length() - 1
            d = (adj[v] & cand).bit_count()
            if d == 0:
                iso |= b
            else:
                if d == 1 and one_v < 0:
                    one_v = v
                if d > bd:
                    bd = d
                    bv = v
        if iso:
            cur |= iso
            size += iso.bit_count()
            cand &= ~iso
            if cand == 0:
                self._record(cur, size)
                return
        if one_v >= 0:
            # A degree-1 vertex is in some optimum: taking it blocks only
            # its single neighbor. Sound for optimization, not enumeration.
            b = 1 << one_v
            self.expand(cand & ~(adj[one_v] | b), cur | b, size + 1)
            return
        b = 1 << bv
        self.expand(cand & ~(adj[bv] | b), cur | b, size + 1)
        self.expand(cand & ~b, cur, size)


@dataclass
class SolveResult:
    alpha: int
    witness: list[int]
    exact: bool
    nodes: int
    elapsed: float


def solve(g: Graph, time_limit: float | None = None) -> SolveResult:
    """Maximum independent set; exact=False only if the time limit fired."""
    t0 = time.perf_counter()
    adj = g.adjacency_bitsets()
    s = _Search(adj, time_limit=time_limit)
    exact = True
    try:
        s.expand((1 << g.n) - 1, 0, 0)
    except SearchTimeout:
        exact = False
    return SolveResult(
        alpha=max(s.best, 0),
        witness=_bits(s.best_mask),
        exact=exact,
        nodes=s.nodes,
        elapsed=time.perf_counter() - t0,
    )


def decision(
    g: Graph, target: int, time_limit: float | None = None
) -> list[int] | None:
    """Return an independent set of size >= target, or None if none exists.

    None is only a proof of absence when no time limit interrupts; on
    timeout SearchTimeout propagates so callers cannot mistake it for a
    refutation.
    """
    if target <= 0:
        return []
    s = _Search(g.adjacency_bitsets(), time_limit=time_limit, target=target)
    try:
        s.expand((1 << g.n) - 1, 0, 0)
    except _Found:
        return _bits(s.best_mask)
    return None


class _Enumerator:
    def __init__(self, adj: list[int], alpha: int, cap: int) -> None:
        self.adj = adj
        self.alpha = alpha
        self.cap = cap
        self.optima: list[int] = []
        self.hit_cap = False

    def _record(self, cur: int) -> None:
        self.optima.append(cur)
        if len(self.optima) >= self.cap:
            self.hit_cap = True
            raise _CapHit

    def expand(self, cand: int, cur: int, size: int) -> None:
        if size + _clique_cover_bound(cand, self.adj) < self.alpha:
            return
        if cand == 0:
            if size == self.alpha:
                self._record(cur)
            return
        adj = self.adj
        iso = 0
        bv = -1
        bd = -1
        rest = cand
        while rest:
            b = rest & -rest
            rest ^= b
            v = b.bit_length() - 1
            d = (adj[v] & cand).bit_count()
            if d == 0:
                iso |= b
            elif d > bd:
                bd = d
                bv = v
        if iso:
            # Isolated-in-cand vertices lie in every optimum through this
            # node, so forcing them preserves completeness of enumeration.
            cur |= iso
            size += iso.bit_count()
            cand &= ~iso
            if cand == 0:
                if size == self.alpha:
                    self._record(cur)
                return
        b = 1 << bv
        self.expand(cand & ~(adj[bv] | b), cur | b, size + 1)
        self.expand(cand & ~b, cur, size)


@dataclass
class EnumerateResult:
    alpha: int
    optima: list[list[int]]
    hit_cap: bool

    @property
    def n_optima(self) -> int:
        return len(self.optima)


def enumerate_optima(
    g: Graph, cap: int = ENUM_CAP, alpha: int | None = None
) -> EnumerateResult:
    """Maximum independent sets, up to `cap` of them.

    If fewer than cap optima exist, all of them are returned with
    hit_cap=False; otherwise exactly cap distinct optima (in deterministic
    search order) with hit_cap=True.
    """
    if alpha is None:
        alpha = solve(g).alpha
    if alpha == 0:
        return EnumerateResult(alpha=0, optima=[[]], hit_cap=False)
    e = _Enumerator(g.adjacency_bitsets(), alpha, cap)
    try:
        e.expand((1 << g.n) - 1, 0, 0)
    except _CapHit:
        pass
    optima = sorted(_bits(m) for m in e.optima)
    return EnumerateResult(alpha=alpha, optima=optima, hit_cap=e.hit_cap)


def optima_intersection(optima: list[list[int]]) -> list[int]:
    """Vertices common to every listed optimum."""
    if not optima:
        return []
    core = set(optima[0])
    for s in optima[1:]:
        core &= set(s)
    return sorted(core)


@dataclass
class CoreResult:
    alpha: int
    witness: list[int]
    core: list[int]
    rho: float
    certified: bool
    timings: dict = field(default_factory=dict)


def certify_core(
    g: Graph,
    alpha: int | None = None,
    witness: list[int] | None = None,
    per_vertex_limit: float | None = None,
) -> CoreResult:
    """Persistent core by per-vertex refutation.

    v is in the core iff alpha(G - v) == alpha - 1, i.e. removing v
    destroys every optimum. Only witness vertices need testing: the core
    is contained in every optimum, in particular in the witness. A
    per-vertex timeout excludes that vertex conservatively and flips
    certified to False.
    """
    t0 = time.perf_counter()
    if alpha is None or witness is None:
        res = solve(g, time_limit=per_vertex_limit)
        if not res.exact:
            raise SearchTimeout("could not solve to optimality within limit")
        alpha, witness = res.alpha, res.witness
    t_solve = time.perf_counter() - t0
    core = []
    certified = True
    for v in sorted(witness):
        h = g.delete_vertex(v)
        try:
            if decision(h, alpha, time_limit=per_vertex_limit) is None:
                core.append(v)
        except SearchTimeout:
            certified = False
    rho = 1.0 if alpha == 0 else len(core) / alpha
    return CoreResult(
        alpha=alpha,
        witness=sorted(witness),
        core=core,
        rho=rho,
        certified=certified,
        timings={
            "solve_s": t_solve,
            "certify_s": time.perf_counter() - t0 - t_solve,
        },
    )


def rigidity_report(
    g: Graph, cap: int = ENUM_CAP, time_limit: float | None = None
) -> dict:
    """Full structure report: solve, enumerate to cap, certify the core."""
    t0 = time.perf_counter()
    res = solve(g, time_limit=time_limit)
    if not res.exact:
        raise SearchTimeout("could not solve to optimality within limit")
    t1 = time.perf_counter()
    enum = enumerate_optima(g, cap=cap, alpha=res.alpha)
    t2 = time.perf_counter()
    cert = certify_core(
        g, alpha=res.alpha, witness=res.witness, per_vertex_limit=time_limit
    )
    t3 = time.perf_counter()
    return {
        "alpha": res.alpha,
        "witness": cert.witness,
        "core": cert.core,
        "rho": cert.rho,
        "n_optima": enum.n_optima,
        "hit_cap": enum.hit_cap,
        "certified": cert.certified,
        "timings": {
            "solve_s": t1 - t0,
            "enumerate_s": t2 - t1,
            "certify_s": t3 - t2,
            "total_s": t3 - t0,
        },
    }


def greedy_mis(g: Graph, variant: str = "delete") -> list[int]:
    """Deterministic greedy baseline.

    "delete": repeatedly delete a max-degree vertex (ties to the lowest
    index) until no edges remain, then re-add any deleted vertex with no
    surviving neighbor, in ascending order, so the result is maximal.
    "select": repeatedly take a min-degree vertex and discard its
    neighborhood; maximal by construction.
    """
    if variant not in ("delete", "select"):
        raise ValueError(f"unknown greedy variant: {variant!r}")
    adj = g.adjacency_bitsets()
    full = (1 << g.n) - 1
    alive = full
    if variant == "select":
        chosen = 0
        while alive:
            pick = -1
            pd = g.n + 1
            rest = alive
            while rest:
                b = rest & -rest
                rest ^= b
                v = b.bit_length() - 1
                d = (adj[v] & alive).bit_count()
                if d < pd:
                    pd = d
                    pick = v
            chosen |= 1 << pick
            alive &= ~(adj[pick] | (1 << pick))
        return _bits(chosen)
    while True:
        worst = -1
        wd = 0
        rest = alive
        while rest:
            b = rest & -rest
            rest ^= b
            v = b.bit_length() - 1
            d = (adj[v] & alive).bit_count()
            if d > wd:
                wd = d
                worst = v
        if wd == 0:
            break
        alive &= ~(1 << worst)
    # Completion pass: deletion alone can strand an addable vertex.
    for v in range(g.n):
        if not (alive >> v) & 1 and adj[v] & alive == 0:
            alive |= 1 << v
    return _bits(alive)


def sa_mis(
    g: Graph,
    seed: int,
    steps: int = 20000,
    t_final_frac: float = 1e-3,
) -> list[int]:
    """Simulated-annealing baseline: add/drop/swap moves over vertex sets.

    Energy is 2 * (edges inside the set) - |set|; geometric cooling from a
    T0 calibrated so early uphill moves are accepted with probability
    around 0.8. The final state is repaired to a maximal independent set.
    Deterministic for a fixed seed.
    """
    import math
    import random

    rng = random.Random(seed)
    n = g.n
    if n == 0:
        return []
    adj = g.adjacency_bitsets()

    cur = 0  # bitmask of the current set

    def delta_add(v: int) -> int:
        return 2 * (adj[v] & cur).bit_count() - 1

    def delta_drop(v: int) -> int:
        return 1 - 2 * (adj[v] & cur).bit_count()

    # Calibrate T0 on uphill deltas of random probe moves from the empty
    # and a random half-full state.
    probe = rng.getrandbits(n) if n > 1 else 1
    saved = cur
    ups = []
    for _ in range(100):
        cur = probe if rng.random() < 0.5 else saved
        v = rng.randrange(n)
        d = delta_drop(v) if (cur >> v) & 1 else delta_add(v)
        if d > 0:
            ups.append(d)
    cur = saved
    t0 = (sum(ups) / len(ups)) / math.log(1 / 0.8) if ups else 1.0
    t_final = max(t0 * t_final_frac, 1e-9)
    cool = (t_final / t0) ** (1.0 / steps)

    temp = t0
    best = cur
    best_e = 0
    cur_e = 0
    for _ in range(steps):
        kind = rng.random()
        if kind < 1 / 3 or cur == 0:
            v = rng.randrange(n)
            if (cur >> v) & 1:
                d = delta_drop(v)
                flip = 1 << v
            else:
                d = delta_add(v)
                flip = 1 << v
            if d <= 0 or rng.random() < math.exp(-d / temp):
                cur ^= flip
                cur_e += d
        else:
            inside = _bits(cur)
            v = inside[rng.randrange(len(inside))]
            if kind < 2 / 3:
                d = delta_drop(v)
                if d <= 0 or rng.random() < math.exp(-d / temp):
                    cur ^= 1 << v
                    cur_e += d
            else:
                w = rng.randrange(n)
                if not (cur >> w) & 1:
                    d1 = delta_drop(v)
                    cur ^= 1 << v
                    d2 = delta_add(w)
                    d = d1 + d2
                    if d <= 0 or rng.random() < math.exp(-d / temp):
                        cur ^= 1 << w
                        cur_e += d
                    else:
                        cur ^= 1 << v  # undo
        if cur_e < best_e:
            best_e = cur_e
            best = cur
        temp *= cool

    # Repair: drop the most-conflicted vertices, then complete to maximal.
    cur = best
    while True:
        worst = -1
        wd = 0
        rest = cur
        while rest:
            b = rest & -rest
            rest ^= b
            v = b.bit_length() - 1
            d = (adj[v] & cur).bit_count()
            if d > wd:
                wd = d
                worst = v
        if wd == 0:
            break
        cur &= ~(1 << worst)
    for v in range(n):
        if not (cur >> v) & 1 and adj[v] & cur == 0:
            cur |= 1 << v
    return _bits(cur)


def approximation_ratio(
    s: list[int], g: Graph, alpha: int | None = None
) -> float:
    """|s| / alpha for an independent set s; errors if s is not independent."""
    if not g.is_independent_set(s):
        raise ValueError("set is not independent")
    if alpha is None:
        alpha = solve(g).alpha
    if alpha == 0:
        return 1.0
    return len(s) / alpha
