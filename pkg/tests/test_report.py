import csv
import json

from mislab.families import DesignSpec, generate
from mislab.graph import Graph
from mislab.report import (
    CSV_FIELDS,
    rigidity_row,
    run_report,
    write_csv,
    write_json,
)


def small_batch():
    king = generate(DesignSpec(family="king", params={"rows": 3, "cols": 3}))
    path = Graph(4, [(0, 1), (1, 2), (2, 3)])
    return [("king33", king), ("p4", path)]


def test_rigidity_row_formats():
    g = Graph(3, [(0, 1)])
    rep = {"alpha": 2, "n_optima": 2, "hit_cap": False, "rho": 1 / 3}
    row = rigidity_row("tiny", g, rep)
    assert row == {"graph": "tiny", "N": 3, "E": 1,
                   "density": round(1 / 3, 6), "alpha": 2,
                   "rho": round(1 / 3, 6), "n_optima": "2"}
    capped = rigidity_row("big", g, {**rep, "hit_cap": True, "n_optima": 500})
    assert capped["n_optima"] == ">=500"


def test_csv_written_with_header(tmp_path):
    rows = [rigidity_row("tiny", Graph(2, [(0, 1)]),
                         {"alpha": 1, "n_optima": 2, "hit_cap": False,
                          "rho": 0.0})]
    p = tmp_path / "r.csv"
    write_csv(rows, p)
    with open(p, newline="") as fh:
        got = list(csv.DictReader(fh))
    assert got[0]["graph"] == "tiny"
    assert tuple(got[0].keys()) == CSV_FIELDS


def test_write_json_stable(tmp_path):
    p = tmp_path / "x.json"
    write_json({"b": 1, "a": [2, 3]}, p)
    text = p.read_text()
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')


def test_run_report_outputs(tmp_path):
    payload = run_report(small_batch(), tmp_path)
    for fname in ("report.csv", "report.json", "alpha_vs_n.png", "rho_hist.png",
                  "layouts.png"):
        assert (tmp_path / fname).exists(), fname
    assert payload["figures"] == ["alpha_vs_n.png", "rho_hist.png", "layouts.png"]
    on_disk = json.loads((tmp_path / "report.json").read_text())
    assert on_disk["rows"] == payload["rows"]
    assert payload["per_graph"]["p4"]["timings"] is None


def test_run_report_timings_recorded(tmp_path):
    payload = run_report(small_batch(), tmp_path, record_timings=True)
    timings = payload["per_graph"]["king33"]["timings"]
    assert timings is not None
    assert set(timings) >= {"solve_s", "enumerate_s"}


def test_run_report_skips_layouts_without_coords(tmp_path):
    payload = run_report([("p4", Graph(4, [(0, 1), (1, 2), (2, 3)]))], tmp_path)
    assert "layouts.png" not in payload["figures"]
    assert not (tmp_path / "layouts.png").exists()


def test_run_report_deterministic_bytes(tmp_path):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    run_report(small_batch(), d1)
    run_report(small_batch(), d2)
    for fname in ("report.csv", "report.json", "alpha_vs_n.png",
                  "rho_hist.png", "layouts.png"):
        assert (d1 / fname).read_bytes() == (d2 / fname).read_bytes(), fname
