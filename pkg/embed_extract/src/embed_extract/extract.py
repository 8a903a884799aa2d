"""Batch extraction: corpus in, unit-norm float32 matrix + trailer out."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .backends import resolve_model
from .corpus import UnitCorpus
from .emb_writer import write_emb_file

log = logging.getLogger("embed_extract")


@dataclass
class ExtractResult:
    labels: list[str]
    rows: np.ndarray  # (n, dim) float64, unit-norm
    metadata: dict  # trailer payload minus the labels key

    def save(self, path: str) -> None:
        write_emb_file(path, self.labels, self.rows, self.metadata)


def embed_units(
    corpus: UnitCorpus,
    model_id: str,
    instruction: str,
    batch_size: int = 32,
) -> ExtractResult:
    """One unit-norm vector per corpus unit, rows in corpus order.

    The instruction is an explicit parameter with no default: instruct-tuned
    models change behavior with the prompt, so the caller must state it
    (empty string included). Units beyond the model input limit are cut at
    the limit and logged, never chunk-averaged.
    """
    if not isinstance(instruction, str):
        raise ValueError("instruction must be a string (may be empty)")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    backend = resolve_model(model_id, instruction)

    prepared: list[str] = []
    truncated: list[str] = []
    for label, text in corpus.units:
        cut, was_cut = backend.prepare(text)
        prepared.append(cut)
        if was_cut:
            truncated.append(label)
            log.warning("unit %r exceeds the %s input limit; truncated",
                        label, model_id)

    blocks = []
    for start in range(0, len(prepared), batch_size):
        blocks.append(backend.encode_batch(prepared[start:start + batch_size]))
    rows = np.vstack(blocks).astype(np.float64)

    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0):
        bad = [corpus.labels[i] for i in np.nonzero(norms == 0)[0]]
        raise ValueError(f"zero-norm embedding for units {bad}")
    rows = rows / norms[:, None]

    metadata = {
        "model_id": model_id,
        "instruction": instruction,
        "batch_size": batch_size,
        "reproducibility": backend.reproducibility,
        "n_truncated": len(truncated),
        "truncated_labels": truncated,
    }
    if corpus.language is not None:
        metadata["language"] = corpus.language
    return ExtractResult(labels=corpus.labels, rows=rows, metadata=metadata)
