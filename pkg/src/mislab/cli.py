"""Command-line pipeline: vectors -> graph -> structure -> register -> shots.

Every subcommand wraps exactly one library operation and writes deterministic
files: identical inputs and seeds give byte-identical outputs. Wall-clock
timings are therefore omitted ("timings": null) unless --record-timings is
passed. Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import functools
import json
from dataclasses import replace
from pathlib import Path

import click

from .families import FAMILIES, DesignSpec, generate
from .graph import Graph
from .mis import (
    ENUM_CAP,
    SearchTimeout,
    approximation_ratio,
    enumerate_optima,
    greedy_mis,
    rigidity_report,
    sa_mis,
    solve,
)
from .register import (
    LADDER_PRESET,
    PULSE_VARIANTS,
    EmbedConfig,
    Register,
    blockade_margin,
    edge_recall,
    hardware_validate,
    ladder,
    margin_sweep,
    pulse_spec,
    sa_embed,
)
from .report import run_report, write_json
from .shots import RECOVERY_MODES, REGIMES, ShotSet, analyze, canonical_recovery
from .structure import (
    adjacency_violations,
    config_null,
    er_null,
    facility_location_select,
    k_center_select,
    overlap,
)
from .textgraph import build_knn_graph, cosine_matrix, load_vectors


def _domain_errors(f):
    """Map library/domain failures to exit code 1, leaving usage errors at 2."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (ValueError, SearchTimeout, OSError, KeyError) as exc:
            raise click.ClickException(str(exc))

    return wrapper


def _load_graph(path: str) -> Graph:
    return Graph.load(path)


@click.group()
def main() -> None:
    """Text-graph rigidity and register-embedding toolkit."""


@main.command("build-graph")
@click.option("--input", "input_path", required=True, help="Vector file (.emb or .csv).")
@click.option("--k", type=int, required=True, help="Neighbors per unit.")
@click.option("--threshold", type=float, default=0.78, show_default=True)
@click.option("--mode", type=click.Choice(["union", "mutual"]), default="union",
              show_default=True)
@click.option("--no-normalize", is_flag=True, help="Skip row normalization.")
@click.option("--output", required=True, help="Graph JSON path.")
@_domain_errors
def build_graph_cmd(input_path, k, threshold, mode, no_normalize, output):
    """Build the kNN similarity graph from an embedding file."""
    emb = load_vectors(input_path)
    g = build_knn_graph(emb, k=k, threshold=threshold, mode=mode,
                        normalize=not no_normalize)
    g.save(output)
    click.echo(f"graph: n={g.n} m={g.m} -> {output}")


@main.command("solve")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--time-limit", type=float, default=None, help="Seconds.")
@click.option("--record-timings", is_flag=True)
@click.option("--output", required=True)
@_domain_errors
def solve_cmd(input_path, time_limit, record_timings, output):
    """Exact maximum independent set."""
    g = _load_graph(input_path)
    res = solve(g, time_limit=time_limit)
    payload = {
        "alpha": res.alpha,
        "witness": res.witness,
        "exact": res.exact,
        "timings": res.timings if record_timings else None,
    }
    write_json(payload, output)
    click.echo(f"alpha={res.alpha} exact={res.exact}")


@main.command("enumerate")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--cap", type=int, default=ENUM_CAP, show_default=True)
@click.option("--output", required=True)
@_domain_errors
def enumerate_cmd(input_path, cap, output):
    """All optimum independent sets up to a cap."""
    g = _load_graph(input_path)
    en = enumerate_optima(g, cap=cap)
    payload = {
        "alpha": en.alpha,
        "n_optima": en.n_optima,
        "hit_cap": en.hit_cap,
        "optima": en.optima,
    }
    write_json(payload, output)
    click.echo(f"alpha={en.alpha} n_optima={en.n_optima} hit_cap={en.hit_cap}")


@main.command("rigidity")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--cap", type=int, default=ENUM_CAP, show_default=True)
@click.option("--time-limit", type=float, default=None)
@click.option("--record-timings", is_flag=True)
@click.option("--output", required=True)
@_domain_errors
def rigidity_cmd(input_path, cap, time_limit, record_timings, output):
    """Alpha, enumerated optima, persistent core, rho, certification."""
    g = _load_graph(input_path)
    rep = rigidity_report(g, cap=cap, time_limit=time_limit)
    if not record_timings:
        rep["timings"] = None
    write_json(rep, output)
    click.echo(f"alpha={rep['alpha']} rho={rep['rho']:.4f} "
               f"n_optima={rep['n_optima']} certified={rep['certified']}")


@main.command("nullmodel")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--model", type=click.Choice(["er", "config"]), required=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--time-limit", type=float, default=None, help="Per-trial seconds.")
@click.option("--output", required=True)
@_domain_errors
def nullmodel_cmd(input_path, model, trials, seed, time_limit, output):
    """Null-ensemble comparison of the independence number."""
    g = _load_graph(input_path)
    fn = er_null if model == "er" else config_null
    stats = fn(g, trials=trials, seed=seed, time_limit=time_limit)
    payload = stats.to_dict()
    payload["seed"] = seed
    payload["trial_seeds"] = [f"{seed}/{t}" for t in range(trials)]
    write_json(payload, output)
    click.echo(f"model={model} empirical_p={stats.empirical_p:.4f} "
               f"timed_out={stats.timed_out}")


@main.command("baselines")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--seed", type=int, required=True)
@click.option("--sa-steps", type=int, default=20000, show_default=True)
@click.option("--vectors", default=None,
              help="Optional vector file for k-center / facility selection.")
@click.option("--select-size", type=int, default=None,
              help="Selection size for vector baselines (default: alpha).")
@click.option("--output", required=True)
@_domain_errors
def baselines_cmd(input_path, seed, sa_steps, vectors, select_size, output):
    """Classical baselines: greedy, annealed, and vector-diversity picks."""
    g = _load_graph(input_path)
    alpha = solve(g).alpha
    payload: dict = {"alpha": alpha}
    for variant in ("delete", "select"):
        s = greedy_mis(g, variant=variant)
        payload[f"greedy_{variant}"] = {
            "vertices": s,
            "size": len(s),
            "ratio": approximation_ratio(s, g, alpha=alpha),
        }
    s = sa_mis(g, seed=seed, steps=sa_steps)
    payload["sa"] = {
        "vertices": s,
        "size": len(s),
        "ratio": approximation_ratio(s, g, alpha=alpha),
    }
    if vectors is not None:
        emb = load_vectors(vectors)
        if emb.n != g.n:
            raise ValueError(f"vector count {emb.n} != graph vertices {g.n}")
        size = alpha if select_size is None else select_size
        sim = cosine_matrix(emb)
        for name, sel in (
            ("k_center", k_center_select(1.0 - sim, size)),
            ("facility_location", facility_location_select(sim, size)),
        ):
            payload[name] = {
                "selected": sel,
                "violations": adjacency_violations(g, sel),
                "overlap_with_witness": overlap(sel, solve(g).witness),
            }
    write_json(payload, output)
    click.echo(f"alpha={alpha} greedy={payload['greedy_delete']['size']} "
               f"sa={payload['sa']['size']}")


# every family parameter surfaces as a long-form flag; None means "default"
_GEN_INT_FLAGS = ("rows", "cols", "rings", "cells_x", "cells_y", "target_n",
                  "hubs", "arms", "arm_len", "depth", "num", "size", "left",
                  "right", "n", "dim", "backbone")
_GEN_FLOAT_FLAGS = ("layer_gap", "radius")


def _generate_options(f):
    for name in reversed(_GEN_FLOAT_FLAGS):
        f = click.option(f"--{name.replace('_', '-')}", type=float, default=None)(f)
    for name in reversed(_GEN_INT_FLAGS):
        f = click.option(f"--{name.replace('_', '-')}", type=int, default=None)(f)
    return f


@main.command("generate")
@click.option("--family", default=None)
@click.option("--list-families", is_flag=True)
@click.option("--spacing", type=float, default=5.0, show_default=True)
@click.option("--chords", default=None,
              help="Chord list for cycle_chords, e.g. '0-6,2-8'.")
@click.option("--output", default=None, help="Graph JSON path.")
@_generate_options
@_domain_errors
def generate_cmd(family, list_families, spacing, chords, output, **flags):
    """Benchmark design-space generators."""
    if list_families:
        for name, fd in FAMILIES.items():
            click.echo(f"{name}: {fd.summary} (defaults {dict(fd.defaults)})")
        return
    if family is None or output is None:
        raise click.UsageError("--family and --output are required "
                               "(or use --list-families)")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    allowed = set(FAMILIES[family].defaults)
    params = {k: v for k, v in flags.items() if v is not None and k in allowed}
    extra = {k for k, v in flags.items() if v is not None and k not in allowed}
    if extra:
        raise ValueError(f"parameters {sorted(extra)} not accepted by {family!r}")
    if chords is not None:
        if "chords" not in allowed:
            raise ValueError(f"--chords not accepted by {family!r}")
        params["chords"] = [tuple(int(x) for x in pair.split("-"))
                            for pair in chords.split(",")]
    g = generate(DesignSpec(family=family, params=params, spacing=spacing))
    g.save(output)
    click.echo(f"{family}: n={g.n} m={g.m} -> {output}")


def _embed_config(mode, seed, iterations, restarts, ladder_preset, site_spacing,
                  layer_gap, margin_target, lattice_rings) -> EmbedConfig:
    cfg = EmbedConfig(mode=mode if mode != "ladder" else "2D", seed=seed,
                      site_spacing=site_spacing, layer_gap=layer_gap,
                      margin_target=margin_target, lattice_rings=lattice_rings)
    if ladder_preset:
        cfg = replace(cfg, **LADDER_PRESET)
    if iterations is not None:
        cfg = replace(cfg, iterations=iterations)
    if restarts is not None:
        cfg = replace(cfg, restarts=restarts)
    return cfg


def _embed_options(f):
    for deco in reversed((
        click.option("--iterations", type=int, default=None),
        click.option("--restarts", type=int, default=None),
        click.option("--ladder-preset", is_flag=True),
        click.option("--site-spacing", type=float, default=5.0, show_default=True),
        click.option("--layer-gap", type=float, default=None),
        click.option("--margin-target", type=float, default=None),
        click.option("--lattice-rings", type=int, default=None),
    )):
        f = deco(f)
    return f


@main.command("embed-register")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--mode", type=click.Choice(["2D", "2L", "3D", "ladder"]),
              default="2D", show_default=True)
@click.option("--seed", type=int, required=True)
@_embed_options
@click.option("--output", required=True, help="Embed result JSON.")
@click.option("--register-output", default=None,
              help="Standalone register file (non-ladder modes).")
@_domain_errors
def embed_register_cmd(input_path, mode, seed, iterations, restarts,
                       ladder_preset, site_spacing, layer_gap, margin_target,
                       lattice_rings, output, register_output):
    """Anneal the graph onto lattice sites; report recall and margin."""
    g = _load_graph(input_path)
    cfg = _embed_config(mode, seed, iterations, restarts, ladder_preset,
                        site_spacing, layer_gap, margin_target, lattice_rings)
    if mode == "ladder":
        if register_output is not None:
            raise ValueError("--register-output needs a single-mode embed")
        out = ladder(g, cfg)
        payload = {m: r.to_dict() for m, r in out.items()}
        write_json(payload, output)
        click.echo(" ".join(f"{m}:{r.recall:.4f}" for m, r in out.items()))
        return
    res = sa_embed(g, cfg)
    payload = res.to_dict()
    payload["hardware_violations"] = hardware_validate(res.register)
    write_json(payload, output)
    if register_output is not None:
        res.register.save(register_output)
    click.echo(f"recall={res.recall:.4f} margin={res.margin:.4f}")


@main.command("margin-sweep")
@click.option("--input", "input_path", required=True, help="Graph JSON.")
@click.option("--targets", required=True, help="Ascending floats, e.g. '1.0,1.1'.")
@click.option("--mode", type=click.Choice(["2D", "2L", "3D"]), default="2D",
              show_default=True)
@click.option("--seed", type=int, required=True)
@_embed_options
@click.option("--output", required=True)
@_domain_errors
def margin_sweep_cmd(input_path, targets, mode, seed, iterations, restarts,
                     ladder_preset, site_spacing, layer_gap, margin_target,
                     lattice_rings, output):
    """One constrained embedding per target margin."""
    g = _load_graph(input_path)
    cfg = _embed_config(mode, seed, iterations, restarts, ladder_preset,
                        site_spacing, layer_gap, margin_target, lattice_rings)
    target_list = [float(x) for x in targets.split(",")]
    rows = margin_sweep(g, target_list, cfg)
    write_json({"targets": target_list, "rows": rows}, output)
    achieved = [r.get("achieved_margin") for r in rows]
    click.echo("achieved: " + ", ".join(
        "err" if a is None else f"{a:.4f}" for a in achieved))


@main.command("pulse-export")
@click.option("--n-atoms", type=int, required=True)
@click.option("--variant", type=click.Choice(list(PULSE_VARIANTS)),
              default="baseline", show_default=True)
@click.option("--output", required=True)
@_domain_errors
def pulse_export_cmd(n_atoms, variant, output):
    """Drive-schedule specification as data; nothing is simulated."""
    spec = pulse_spec(n_atoms, variant=variant)
    write_json(spec.to_dict(), output)
    click.echo(f"variant={variant} duration={spec.duration_us}us")


@main.command("analyze-shots")
@click.option("--input", "input_path", required=True, help="Shots file.")
@click.option("--graph", "graph_path", required=True, help="Benchmark graph JSON.")
@click.option("--alpha", type=int, default=None,
              help="Benchmark alpha (default: fresh exact solve).")
@click.option("--regime", type=click.Choice(list(REGIMES)), required=True)
@click.option("--recovery-mode", type=click.Choice(list(RECOVERY_MODES)),
              default=None)
@click.option("--text-graph", "text_graph_path", default=None)
@click.option("--map", "map_path", default=None,
              help="JSON list: register node -> text vertex.")
@click.option("--reference", "reference_path", default=None,
              help="JSON list of backbone vertices (overlap mode).")
@click.option("--text-alpha", type=int, default=None)
@click.option("--output", required=True)
@_domain_errors
def analyze_shots_cmd(input_path, graph_path, alpha, regime, recovery_mode,
                      text_graph_path, map_path, reference_path, text_alpha,
                      output):
    """Score measurement bitstrings against the benchmark graph."""
    shots = ShotSet.load(input_path)
    g = _load_graph(graph_path)
    if alpha is None:
        alpha = solve(g).alpha
    rep = analyze(shots, g, alpha=alpha, regime=regime)
    payload = rep.to_dict()
    if recovery_mode is not None:
        if text_graph_path is None or map_path is None or text_alpha is None:
            raise ValueError("recovery needs --text-graph, --map, --text-alpha")
        g_text = _load_graph(text_graph_path)
        reg_to_text = json.loads(Path(map_path).read_text())
        reference = (json.loads(Path(reference_path).read_text())
                     if reference_path is not None else None)
        payload["canonical_recovery"] = canonical_recovery(
            shots, reg_to_text, g_text, text_alpha, mode=recovery_mode,
            reference_backbone=reference, g_reg=g)
        payload["recovery_mode"] = recovery_mode  # declare which count anchors it
    write_json(payload, output)
    click.echo(f"valid={rep.valid_fraction:.4f} best_ratio={rep.best_ratio:.4f}")


@main.command("verify")
@click.option("--graph", "graph_path", required=True, help="Graph JSON.")
@click.option("--report", "report_path", default=None,
              help="solve/rigidity output to re-check.")
@click.option("--embed-result", "embed_path", default=None,
              help="embed-register output to re-check.")
@click.option("--strict", is_flag=True, help="Also re-solve alpha from scratch.")
@click.option("--time-limit", type=float, default=None,
              help="Budget for the strict re-solve.")
@_domain_errors
def verify_cmd(graph_path, report_path, embed_path, strict, time_limit):
    """Deposit-style consistency check; exit 1 lists named violations."""
    g = _load_graph(graph_path)
    violations: list[str] = []

    stored_density = g.metadata.get("density")
    if stored_density is not None and stored_density != g.density():
        violations.append(
            f"density_mismatch: stored {stored_density} != {g.density()}")

    if report_path is not None:
        rep = json.loads(Path(report_path).read_text())
        witness = rep["witness"]
        if not g.is_independent_set(witness):
            violations.append("witness_not_independent")
        if len(witness) != rep["alpha"]:
            violations.append(
                f"witness_size_mismatch: {len(witness)} != alpha {rep['alpha']}")
        if "core" in rep:
            if not set(rep["core"]).issubset(witness):
                violations.append("core_not_in_witness")
            want_rho = 1.0 if rep["alpha"] == 0 else len(rep["core"]) / rep["alpha"]
            if rep["rho"] != want_rho:
                violations.append(f"rho_mismatch: stored {rep['rho']} != {want_rho}")
        if strict:
            fresh = solve(g, time_limit=time_limit)
            if not fresh.exact:
                violations.append("alpha_unverified: re-solve hit the time limit")
            elif fresh.alpha != rep["alpha"]:
                violations.append(
                    f"alpha_mismatch: stored {rep['alpha']} != {fresh.alpha}")

    if embed_path is not None:
        emb = json.loads(Path(embed_path).read_text())
        reg_d = emb["register"]
        reg = Register(coords=reg_d["coords"], r_b=reg_d["r_b"],
                       lattice=reg_d.get("lattice", {"type": "free"}),
                       node_map=reg_d.get("node_map"))
        if edge_recall(g, reg) != emb["recall"]:
            violations.append(
                f"recall_mismatch: stored {emb['recall']} != {edge_recall(g, reg)}")
        if blockade_margin(reg, g) != emb["margin"]:
            violations.append(
                f"margin_mismatch: stored {emb['margin']} != {blockade_margin(reg, g)}")

    if violations:
        raise click.ClickException("; ".join(violations))
    click.echo("OK")


@main.command("report")
@click.option("--input", "input_dir", required=True,
              help="Directory of graph JSON files.")
@click.option("--output-dir", required=True)
@click.option("--cap", type=int, default=ENUM_CAP, show_default=True)
@click.option("--time-limit", type=float, default=None)
@click.option("--record-timings", is_flag=True)
@_domain_errors
def report_cmd(input_dir, output_dir, cap, time_limit, record_timings):
    """Per-graph structure rows -> CSV + JSON + figures."""
    paths = sorted(Path(input_dir).glob("*.json"))
    if not paths:
        raise ValueError(f"no graph JSON files in {input_dir}")
    named = [(p.stem, Graph.load(p)) for p in paths]
    payload = run_report(named, output_dir, cap=cap, time_limit=time_limit,
                         record_timings=record_timings)
    click.echo(f"{len(payload['rows'])} graphs -> {output_dir}")


if __name__ == "__main__":
    main()
