"""EMB1 container writer.

Layout: 4-byte magic "EMB1", u32 n, u32 dim (little-endian), a row-major
float32 block, then a UTF-8 JSON trailer whose "labels" key names the rows
and whose remaining keys are free-form metadata.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

EMB_MAGIC = b"EMB1"


def write_emb_file(path: str | Path, labels: list[str], rows: np.ndarray,
                   metadata: dict | None = None) -> None:
    rows = np.asarray(rows)
    if rows.ndim != 2 or rows.shape[0] != len(labels):
        raise ValueError("rows must be 2d with one row per label")
    trailer = {"labels": list(labels), **(metadata or {})}
    n, dim = rows.shape
    with open(path, "wb") as f:
        f.write(EMB_MAGIC)
        f.write(struct.pack("<II", n, dim))
        f.write(np.ascontiguousarray(rows, dtype="<f4").tobytes())
        f.write(json.dumps(trailer, ensure_ascii=False).encode("utf-8"))
