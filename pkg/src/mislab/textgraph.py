"""Similarity graphs over embedding vectors.

Builds the k-nearest-neighbor similarity graph used throughout the
pipeline: cosine similarities over unit-normalized rows, kNN truncation,
then a similarity threshold. The threshold is applied after the kNN
truncation, which is the documented order (a pair can clear the threshold
yet be absent because neither endpoint ranks the other in its top k).
"""
from __future__ import annotations

import csv
import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph

EMB_MAGIC = b"EMB1"


@dataclass
class EmbeddingMatrix:
    labels: list[str]
    rows: np.ndarray  # (n, dim) float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2 or self.rows.shape[0] == 0:
            raise ValueError("rows must be a non-empty 2d array")
        if len(self.labels) != self.rows.shape[0]:
            raise ValueError("labels and rows disagree on length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("non-finite embedding values")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


def cosine_matrix(emb: EmbeddingMatrix, normalize: bool = True) -> np.ndarray:
    """Dense cosine similarity matrix; symmetric, unit diagonal."""
    v = emb.rows
    norms = np.linalg.norm(v, axis=1)
    if np.any(norms == 0):
        bad = int(np.argmin(norms))
        raise ValueError(f"zero-norm row at index {bad}")
    if normalize:
        v = v / norms[:, None]
    s = v @ v.T
    np.fill_diagonal(s, 1.0)
    return s


def build_knn_graph(
    emb: EmbeddingMatrix,
    k: int,
    threshold: float = 0.78,
    mode: str = "union",
    normalize: bool = True,
) -> Graph:
    """kNN similarity graph over the embedding rows.

    mode "union": edge if either endpoint has the other in its top k;
    mode "mutual": both must. Neighbor ranking is by descending similarity
    with ties broken toward the lower index. The threshold prunes pairs
    after the kNN truncation.
    """
    if mode not in ("union", "mutual"):
        raise ValueError(f"mode must be 'union' or 'mutual', got {mode!r}")
    n = emb.n
    if not 1 <= k < n:
        raise ValueError("k must satisfy 1 <= k < number of units")
    s = cosine_matrix(emb, normalize=normalize)
    neighbor: list[set] = []
    idx = np.arange(n)
    for i in range(n):
        order = np.lexsort((idx, -s[i]))
        order = order[order != i]
        neighbor.append(set(order[:k].tolist()))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if s[i, j] < threshold:
                continue
            in_i = j in neighbor[i]
            in_j = i in neighbor[j]
            if (in_i or in_j) if mode == "union" else (in_i and in_j):
                edges.append((i, j))
    return Graph(
        n,
        edges,
        labels=list(emb.labels),
        metadata={
            "knn": {
                "k": k,
                "threshold": threshold,
                "mode": mode,
                "normalize": normalize,
                "threshold_applied": "after_knn",
            }
        },
    )


def write_emb(path: str, emb: EmbeddingMatrix) -> None:
    """EMB1 container: magic, u32 n, u32 dim (LE), float32 row-major block,
    then a UTF-8 JSON trailer carrying labels and any extra metadata."""
    trailer = {"labels": list(emb.labels), **emb.metadata}
    with open(path, "wb") as f:
        f.write(EMB_MAGIC)
        f.write(struct.pack("<II", emb.n, emb.dim))
        f.write(np.ascontiguousarray(emb.rows, dtype="<f4").tobytes())
        f.write(json.dumps(trailer, ensure_ascii=False).encode("utf-8"))


def read_emb(path: str) -> EmbeddingMatrix:
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:4] != EMB_MAGIC:
        raise ValueError("not an EMB1 file")
    n, dim = struct.unpack_from("<II", blob, 4)
    off = 12
    need = n * dim * 4
    if len(blob) < off + need:
        raise ValueError("truncated EMB1 float block")
    rows = np.frombuffer(blob, dtype="<f4", count=n * dim, offset=off)
    rows = rows.reshape(n, dim).astype(np.float64)
    trailer = json.loads(blob[off + need:].decode("utf-8"))
    labels = trailer.pop("labels")
    return EmbeddingMatrix(labels=labels, rows=rows, metadata=trailer)


def read_csv_vectors(path: str) -> EmbeddingMatrix:
    """CSV import: label in the first column, float components after."""
    labels = []
    rows = []
    with open(path, newline="") as f:
        for rec in csv.reader(f):
            if not rec:
                continue
            labels.append(rec[0])
            rows.append([float(x) for x in rec[1:]])
    if not rows:
        raise ValueError("empty vector CSV")
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise ValueError("ragged vector CSV")
    return EmbeddingMatrix(labels=labels, rows=np.array(rows, dtype=np.float64))


def load_vectors(path: str) -> EmbeddingMatrix:
    """Dispatch on content: EMB1 container or CSV fallback."""
    with open(path, "rb") as f:
        head = f.read(4)
    return read_emb(path) if head == EMB_MAGIC else read_csv_vectors(path)
