"""Aggregate per-graph structure analyses into CSV, JSON, and figures."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .graph import Graph
from .mis import ENUM_CAP, rigidity_report

CSV_FIELDS = ("graph", "N", "E", "density", "alpha", "rho", "n_optima")


def write_json(payload: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def rigidity_row(name: str, g: Graph, rep: dict) -> dict:
    """One CSV row per graph; #opt becomes a lower bound at the cap."""
    n_opt = f">={rep['n_optima']}" if rep["hit_cap"] else str(rep["n_optima"])
    return {
        "graph": name,
        "N": g.n,
        "E": g.m,
        "density": round(g.density(), 6),
        "alpha": rep["alpha"],
        "rho": round(rep["rho"], 6),
        "n_optima": n_opt,
    }


def write_csv(rows: list[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)


def _save(fig, path: Path) -> None:
    # fixed metadata so identical reruns produce identical bytes
    fig.savefig(path, dpi=120, metadata={"Software": "mislab"})
    plt.close(fig)


def fig_alpha_vs_n(rows: list[dict], path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    ns = [r["N"] for r in rows]
    alphas = [r["alpha"] for r in rows]
    rhos = [r["rho"] for r in rows]
    sc = ax.scatter(ns, alphas, c=rhos, cmap="viridis", vmin=0.0, vmax=1.0, s=36)
    fig.colorbar(sc, ax=ax, label="rho (persistent core / alpha)")
    ax.set_xlabel("N")
    ax.set_ylabel("alpha")
    ax.set_title("independence number vs size")
    fig.tight_layout()
    _save(fig, Path(path))


def fig_rho_hist(rows: list[dict], path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    ax.hist([r["rho"] for r in rows], bins=[i / 10 for i in range(11)],
            edgecolor="black")
    ax.set_xlabel("rho")
    ax.set_ylabel("graphs")
    ax.set_title("rigidity distribution")
    fig.tight_layout()
    _save(fig, Path(path))


def fig_layouts(
    named: list[tuple[str, Graph]], reports: dict, path: str | Path
) -> bool:
    """Coordinate layouts with one optimum highlighted; skips abstract graphs.

    Returns False (and writes nothing) when no graph carries coordinates.
    """
    geo = [(name, g) for name, g in named if g.coords is not None]
    if not geo:
        return False
    cols = min(3, len(geo))
    rows_n = math.ceil(len(geo) / cols)
    fig, axes = plt.subplots(rows_n, cols, figsize=(3.4 * cols, 3.2 * rows_n),
                             squeeze=False)
    for ax in axes.flat:
        ax.set_axis_off()
    for ax, (name, g) in zip(axes.flat, geo):
        xs = [c[0] for c in g.coords]
        ys = [c[1] for c in g.coords]
        for u, v in g.edges:
            ax.plot([xs[u], xs[v]], [ys[u], ys[v]], color="0.8", lw=0.7, zorder=1)
        witness = set(reports[name]["witness"])
        ax.scatter([xs[i] for i in range(g.n) if i not in witness],
                   [ys[i] for i in range(g.n) if i not in witness],
                   s=14, color="0.55", zorder=2)
        ax.scatter([xs[i] for i in sorted(witness)],
                   [ys[i] for i in sorted(witness)],
                   s=22, color="tab:red", zorder=3)
        ax.set_title(name, fontsize=9)
        ax.set_aspect("equal")
    fig.tight_layout()
    _save(fig, Path(path))
    return True


def run_report(
    named: list[tuple[str, Graph]],
    outdir: str | Path,
    cap: int = ENUM_CAP,
    time_limit: float | None = None,
    record_timings: bool = False,
) -> dict:
    """Analyze every graph, then drop CSV + JSON + figures into outdir."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    reports: dict = {}
    rows = []
    for name, g in named:
        rep = rigidity_report(g, cap=cap, time_limit=time_limit)
        if not record_timings:
            rep["timings"] = None
        reports[name] = rep
        rows.append(rigidity_row(name, g, rep))

    write_csv(rows, outdir / "report.csv")
    figures = []
    fig_alpha_vs_n(rows, outdir / "alpha_vs_n.png")
    figures.append("alpha_vs_n.png")
    fig_rho_hist(rows, outdir / "rho_hist.png")
    figures.append("rho_hist.png")
    if fig_layouts(named, reports, outdir / "layouts.png"):
        figures.append("layouts.png")

    payload = {"rows": rows, "figures": figures, "per_graph": reports}
    write_json(payload, outdir / "report.json")
    return payload
