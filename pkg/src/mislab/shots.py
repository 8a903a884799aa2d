"""Scoring of measurement bitstrings against benchmark graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph
from .mis import solve

REGIMES = ("embedded", "exact_udg")
RECOVERY_MODES = ("backbone_overlap", "largest_sub_is")


@dataclass
class ShotSet:
    """Measurement bitstrings in register node order.

    Bit i of each shot is the readout of register node i; '1' marks an atom
    observed in the Rydberg state (i.e. selected into the candidate set).
    """

    n_atoms: int
    shots: list[str]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.shots:
            raise ValueError("shot set must contain at least one shot")
        for i, s in enumerate(self.shots):
            if len(s) != self.n_atoms:
                raise ValueError(
                    f"shot {i} has length {len(s)}, expected {self.n_atoms}"
                )
            bad = set(s) - {"0", "1"}
            if bad:
                raise ValueError(f"shot {i} has characters outside 0/1: {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.shots)

    def save(self, path: str | Path) -> None:
        lines = [f"# n_atoms: {self.n_atoms}"]
        for key in sorted(self.metadata):
            lines.append(f"# {key}: {self.metadata[key]}")
        lines.extend(self.shots)
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "ShotSet":
        metadata: dict = {}
        shots: list[str] = []
        for raw in Path(path).read_text().splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if ":" in body:
                    key, _, value = body.partition(":")
                    metadata[key.strip()] = value.strip()
                continue
            shots.append(line)
        if not shots:
            raise ValueError(f"no shots found in {path}")
        n_atoms = len(shots[0])
        if "n_atoms" in metadata:
            declared = int(metadata.pop("n_atoms"))
            if declared != n_atoms:
                raise ValueError(
                    f"header n_atoms {declared} != shot length {n_atoms}"
                )
        return cls(n_atoms=n_atoms, shots=shots, metadata=metadata)


def _ones(shot: str) -> list[int]:
    return [i for i, c in enumerate(shot) if c == "1"]


def _violation_count(ones: list[int], edges: list[tuple[int, int]]) -> int:
    s = set(ones)
    return sum(1 for u, v in edges if u in s and v in s)


@dataclass
class ShotReport:
    regime: str
    valid_fraction: float
    best_ratio: float
    near_valid_weight_fraction: float
    near_valid_edge_fraction: float
    hamming_histogram: dict
    best_shot: str | None
    canonical_recovery: float | None = None

    def to_dict(self) -> dict:
        return {
            "regime": self.regime,
            "valid_fraction": self.valid_fraction,
            "best_ratio": self.best_ratio,
            "near_valid_weight_fraction": self.near_valid_weight_fraction,
            "near_valid_edge_fraction": self.near_valid_edge_fraction,
            "hamming_histogram": {
                str(w): c for w, c in sorted(self.hamming_histogram.items())
            },
            "best_shot": self.best_shot,
            "canonical_recovery": self.canonical_recovery,
        }


def analyze(shots: ShotSet, benchmark: Graph, alpha: int, regime: str) -> ShotReport:
    """Score a shot set against its benchmark graph.

    best_ratio = max over valid shots of weight/alpha, 0.0 when no shot is
    valid.  The two near-valid columns use different definitions (weight
    within 1 of alpha vs at most two violated benchmark edges); `regime`
    declares which one is the headline metric and is recorded in the report
    so the columns are never read interchangeably.
    """
    if regime not in REGIMES:
        raise ValueError(f"regime must be one of {REGIMES}, got {regime!r}")
    if shots.n_atoms != benchmark.n:
        raise ValueError(
            f"shot length {shots.n_atoms} != benchmark vertices {benchmark.n}"
        )
    if alpha < 1:
        raise ValueError("alpha must be >= 1")

    n_valid = 0
    n_near_weight = 0
    n_near_edge = 0
    histogram: dict = {}
    best_weight = -1
    best_shot = None
    for s in shots.shots:
        ones = _ones(s)
        w = len(ones)
        histogram[w] = histogram.get(w, 0) + 1
        viol = _violation_count(ones, benchmark.edges)
        if viol == 0:
            n_valid += 1
            if w > best_weight:
                best_weight = w
                best_shot = s
        if abs(w - alpha) <= 1:
            n_near_weight += 1
        if viol <= 2:
            n_near_edge += 1

    total = len(shots.shots)
    return ShotReport(
        regime=regime,
        valid_fraction=n_valid / total,
        best_ratio=(best_weight / alpha) if best_weight >= 0 else 0.0,
        near_valid_weight_fraction=n_near_weight / total,
        near_valid_edge_fraction=n_near_edge / total,
        hamming_histogram=histogram,
        best_shot=best_shot,
    )


def canonical_recovery(
    shots: ShotSet,
    reg_to_text: list[int],
    g_text: Graph,
    alpha_text: int,
    mode: str = "backbone_overlap",
    reference_backbone: list[int] | None = None,
    g_reg: Graph | None = None,
) -> float:
    """End-to-end recovery score of text-graph structure from register shots.

    reg_to_text[i] is the text vertex carried by register node i (injective).
    When g_reg is supplied only register-valid shots are scored; otherwise
    every shot competes.
    """
    if mode not in RECOVERY_MODES:
        raise ValueError(f"mode must be one of {RECOVERY_MODES}, got {mode!r}")
    if len(reg_to_text) != shots.n_atoms:
        raise ValueError("reg_to_text length must equal n_atoms")
    if len(set(reg_to_text)) != len(reg_to_text):
        raise ValueError("reg_to_text must be injective")
    for t in reg_to_text:
        if not 0 <= t < g_text.n:
            raise ValueError(f"mapped vertex {t} outside text graph")
    if alpha_text < 1:
        raise ValueError("alpha_text must be >= 1")
    if mode == "backbone_overlap":
        if reference_backbone is None:
            raise ValueError("backbone_overlap mode requires reference_backbone")
        ref = set(reference_backbone)

    best = 0.0
    for s in shots.shots:
        ones = _ones(s)
        if g_reg is not None and _violation_count(ones, g_reg.edges) > 0:
            continue
        mapped = sorted(reg_to_text[i] for i in ones)
        if not mapped:
            continue
        if mode == "backbone_overlap":
            score = len(ref.intersection(mapped)) / alpha_text
        else:
            # exact solve on the tiny induced subgraph of the shot's 1-set
            sub = g_text.induced_subgraph(mapped)
            score = solve(sub).alpha / alpha_text
        best = max(best, score)
    return best
