"""Turn a labeled unit corpus into unit-norm embedding vectors on disk."""

from .backends import ModelLoadError, resolve_model
from .corpus import UnitCorpus, read_units_jsonl
from .extract import ExtractResult, embed_units
from .emb_writer import write_emb_file

__all__ = [
    "ExtractResult",
    "ModelLoadError",
    "UnitCorpus",
    "embed_units",
    "read_units_jsonl",
    "resolve_model",
    "write_emb_file",
]

__version__ = "0.1.0"
