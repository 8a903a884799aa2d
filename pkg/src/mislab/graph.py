"""Graph container, geometric adjacency, and the canonical JSON format."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


def normalize_edges(edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Dedupe, orient i < j, sort lexicographically."""
    out = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        out.add((u, v) if u < v else (v, u))
    return sorted(out)


@dataclass
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are stored normalized (i < j, lexicographically sorted).
    ``labels`` and ``coords`` are optional per-vertex annotations;
    ``coords`` rows are 2D or 3D positions in micrometers for geometric
    families and registers.
    """

    n: int
    edges: list[tuple[int, int]]
    labels: list[str] | None = None
    coords: list[tuple[float, ...]] | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be >= 0")
        self.edges = normalize_edges(self.edges)
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length != n")
        if self.coords is not None:
            if len(self.coords) != self.n:
                raise ValueError("coords length != n")
            self.coords = [tuple(float(x) for x in row) for row in self.coords]
            dims = {len(row) for row in self.coords}
            if dims - {2, 3}:
                raise ValueError("coords rows must be 2D or 3D")
            if len(dims) > 1:
                raise ValueError("coords rows must share one dimension")

    @property
    def m(self) -> int:
        return len(self.edges)

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2.0 * len(self.edges) / (self.n * (self.n - 1))

    def adjacency_bitsets(self) -> list[int]:
        """Neighbor mask per vertex; bit j of adj[i] set iff {i,j} is an edge."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)

    def is_independent_set(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        for v in vs:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        return not any(u in vs and v in vs for u, v in self.edges)

    def delete_vertex(self, v: int) -> "Graph":
        """Graph minus vertex v, remaining vertices renumbered to 0..n-2."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        remap = {u: (u if u < v else u - 1) for u in range(self.n) if u != v}
        edges = [(remap[a], remap[b]) for a, b in self.edges if v not in (a, b)]
        labels = None
        if self.labels is not None:
            labels = [self.labels[u] for u in range(self.n) if u != v]
        coords = None
        if self.coords is not None:
            coords = [self.coords[u] for u in range(self.n) if u != v]
        return Graph(self.n - 1, edges, labels=labels, coords=coords)

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        keep = sorted(set(vertices))
        remap = {u: i for i, u in enumerate(keep)}
        edges = [
            (remap[a], remap[b])
            for a, b in self.edges
            if a in remap and b in remap
        ]
        labels = [self.labels[u] for u in keep] if self.labels else None
        coords = [self.coords[u] for u in keep] if self.coords else None
        return Graph(len(keep), edges, labels=labels, coords=coords)

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.coords is not None:
            d["coords"] = [list(row) for row in self.coords]
        if self.metadata:
            d["metadata"] = self.metadata
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        return cls(
            n=int(d["n"]),
            edges=[tuple(e) for e in d["edges"]],
            labels=list(d["labels"]) if "labels" in d else None,
            coords=[tuple(row) for row in d["coords"]] if "coords" in d else None,
            metadata=dict(d.get("metadata", {})),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(graph_to_json(self))

    @classmethod
    def load(cls, path: str | Path) -> "Graph":
        return cls.from_dict(json.loads(Path(path).read_text()))


def graph_to_json(g: Graph) -> str:
    """Canonical serialization: fixed key order, sorted edges, newline at EOF."""
    return json.dumps(g.to_dict(), indent=2, sort_keys=False) + "\n"


def euclidean(p: Sequence[float], q: Sequence[float]) -> float:
    return math.dist(p, q)


def geometric_adjacency(
    coords: Sequence[Sequence[float]], radius: float
) -> Graph:
    """Unit-disk/-ball graph: edge {u,v} iff euclidean distance <= radius.

    The comparison is a plain <= with no epsilon; generators bake any
    tolerance into the radius they declare.
    """
    if not coords:
        raise ValueError("coords must be non-empty")
    if radius <= 0:
        raise ValueError("radius must be > 0")
    if len({len(row) for row in coords}) > 1:
        raise ValueError("mixed coordinate dimensions")
    n = len(coords)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if euclidean(coords[i], coords[j]) <= radius:
                edges.append((i, j))
    return Graph(n, edges, coords=[tuple(row) for row in coords])


@dataclass
class UdgCheck:
    missing_edges: list[tuple[int, int]]  # graph edges not realized within radius
    extra_edges: list[tuple[int, int]]  # realized pairs that are not graph edges
    recall: float  # 1 - |missing| / |E|; 1.0 for an edgeless graph


def udg_check(
    g: Graph, coords: Sequence[Sequence[float]], radius: float
) -> UdgCheck:
    """Check how faithfully a coordinate placement realizes g's edges."""
    if len(coords) != g.n:
        raise ValueError("coords size does not match graph")
    geo = {
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if euclidean(coords[i], coords[j]) <= radius
    }
    have = g.edge_set()
    missing = sorted(have - geo)
    extra = sorted(geo - have)
    recall = 1.0 if not have else 1.0 - len(missing) / len(have)
    return UdgCheck(missing_edges=missing, extra_edges=extra, recall=recall)
