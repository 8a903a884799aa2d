"""Embedding backends: deterministic stub and sentence-transformers models.

A backend exposes three things: an input-limit rule (prepare), batched
encoding of already-prepared texts, and a declared reproducibility level
that ends up in the output trailer.
"""

from __future__ import annotations

import hashlib

import numpy as np

STUB_CHAR_LIMIT = 2048


class ModelLoadError(RuntimeError):
    """The requested model id could not be resolved into a working encoder."""


class StubBackend:
    """Hash-seeded gaussian vectors: offline, bitwise-reproducible.

    The seed mixes model id, instruction, and unit text, so identical texts
    give identical rows while a changed instruction changes every row --
    the same observable contract as an instruct-tuned model.
    """

    reproducibility = "bitwise"

    def __init__(self, model_id: str, dim: int, instruction: str) -> None:
        if dim < 1:
            raise ModelLoadError(f"stub dimension must be >= 1, got {dim}")
        self.model_id = model_id
        self.dim = dim
        self.instruction = instruction

    def prepare(self, text: str) -> tuple[str, bool]:
        if len(text) > STUB_CHAR_LIMIT:
            return text[:STUB_CHAR_LIMIT], True
        return text, False

    def _row(self, text: str) -> np.ndarray:
        key = "\x00".join((self.model_id, self.instruction, text))
        digest = hashlib.sha256(key.encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
        return rng.standard_normal(self.dim)

    def encode_batch(self, texts: list[str]) -> np.ndarray:
        return np.stack([self._row(t) for t in texts])


class SentenceTransformerBackend:
    """Hosted model via sentence-transformers; instruction is prepended
    verbatim to every unit (no prompt template is invented)."""

    reproducibility = "within-1e-6"

    def __init__(self, model_id: str, instruction: str) -> None:
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise ModelLoadError(f"sentence-transformers unavailable: {exc}")
        try:
            self.model = SentenceTransformer(model_id)
        except Exception as exc:
            raise ModelLoadError(f"could not load {model_id!r}: {exc}")
        self.model_id = model_id
        self.instruction = instruction
        self.dim = self.model.get_sentence_embedding_dimension()
        self._limit = getattr(self.model, "max_seq_length", None)
        self._tokenizer = getattr(self.model, "tokenizer", None)

    def prepare(self, text: str) -> tuple[str, bool]:
        full = self.instruction + text
        if self._limit is None or self._tokenizer is None:
            return full, False
        ids = self._tokenizer.encode(full)
        if len(ids) <= self._limit:
            return full, False
        # the model would silently drop the tail; cut and report instead
        kept = self._tokenizer.decode(ids[: self._limit],
                                      skip_special_tokens=True)
        return kept, True

    def encode_batch(self, texts: list[str]) -> np.ndarray:
        return np.asarray(self.model.encode(texts, convert_to_numpy=True,
                                            normalize_embeddings=True))


def resolve_model(model_id: str, instruction: str):
    """stub:<dim> is always available; anything else goes to the model hub."""
    if model_id.startswith("stub:"):
        tail = model_id.split(":", 1)[1]
        try:
            dim = int(tail)
        except ValueError:
            raise ModelLoadError(f"stub dimension must be an integer: {model_id!r}")
        return StubBackend(model_id, dim, instruction)
    return SentenceTransformerBackend(model_id, instruction)
