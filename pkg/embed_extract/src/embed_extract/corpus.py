"""Ordered (label, text) units with strict identity rules."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class UnitCorpus:
    """Segmentation output: one row per text unit, order is meaningful.

    Labels are the downstream vertex names, so they must be unique; empty
    texts would embed as noise, so they are rejected here rather than later.
    """

    units: list[tuple[str, str]]
    language: str | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.units:
            raise ValueError("corpus must contain at least one unit")
        labels = [lab for lab, _ in self.units]
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise ValueError(f"duplicate labels: {dupes}")
        for lab, text in self.units:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"label must be a non-empty string, got {lab!r}")
            if not isinstance(text, str) or not text.strip():
                raise ValueError(f"unit {lab!r} has empty text")

    def __len__(self) -> int:
        return len(self.units)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.units]

    @property
    def texts(self) -> list[str]:
        return [text for _, text in self.units]


def read_units_jsonl(path: str | Path) -> UnitCorpus:
    """One JSON object per line: {"label": ..., "text": ...}; order kept."""
    units: list[tuple[str, str]] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{lineno}: invalid JSON ({exc.msg})")
        if not isinstance(obj, dict) or "label" not in obj or "text" not in obj:
            raise ValueError(
                f"{path}:{lineno}: each line needs 'label' and 'text' fields"
            )
        units.append((obj["label"], obj["text"]))
    if not units:
        raise ValueError(f"no units found in {path}")
    return UnitCorpus(units=units)
