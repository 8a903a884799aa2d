import math
import random

import pytest

from mislab.families import DesignSpec, generate
from mislab.graph import Graph, geometric_adjacency
from mislab.register import (
    LADDER_PRESET,
    EmbedConfig,
    HardwareProfile,
    Register,
    _SaState,
    _lattice_sites,
    blockade_margin,
    edge_recall,
    hardware_validate,
    ladder,
    margin_sweep,
    missing_and_extra,
    pulse_spec,
    sa_embed,
)


def king55():
    return generate(DesignSpec(family="king", params={"rows": 5, "cols": 5}))


def test_register_validation():
    with pytest.raises(ValueError, match="permutation"):
        Register(coords=[(0, 0), (5, 0)], node_map=[0, 0])
    with pytest.raises(ValueError, match="non-finite"):
        Register(coords=[(0, 0), (math.inf, 0)])
    with pytest.raises(ValueError, match="r_b"):
        Register(coords=[(0, 0)], r_b=0.0)


def test_register_roundtrip(tmp_path):
    reg = Register(coords=[(0.0, 0.0), (5.0, 0.0)], r_b=8.0,
                   lattice={"type": "free"}, node_map=[1, 0])
    p = tmp_path / "reg.json"
    reg.save(str(p))
    back = Register.load(str(p))
    assert back.coords == reg.coords
    assert back.node_map == reg.node_map
    assert back.positions() == [(5.0, 0.0), (0.0, 0.0)]


def test_edge_recall_and_margin_basics():
    g = Graph(3, [(0, 1), (1, 2)])
    reg = Register(coords=[(0, 0), (5, 0), (10, 0)])
    assert edge_recall(g, reg) == 1.0
    assert blockade_margin(reg, g) == 10 / 8  # non-edge (0,2)
    miss, extra = missing_and_extra(g, reg)
    assert miss == [] and extra == []
    with pytest.raises(ValueError):
        edge_recall(Graph(2, []), reg)


def test_edge_recall_edgeless_is_one():
    g = Graph(3, [])
    reg = Register(coords=[(0, 0), (1, 0), (2, 0)])
    assert edge_recall(g, reg) == 1.0


def test_blockade_margin_complete_graph_infinite():
    g = Graph(3, [(0, 1), (0, 2), (1, 2)])
    reg = Register(coords=[(0, 0), (5, 0), (0, 5)])
    assert blockade_margin(reg, g) == math.inf


def test_hardware_validate_rules():
    assert hardware_validate(Register(coords=[(0, 0), (10, 0)])) == []
    too_many = Register(coords=[(7.0 * i, 0.0) for i in range(101)])
    assert any("count" in v for v in hardware_validate(too_many))
    spread = Register(coords=[(0, 0), (100, 0)])
    assert any("centroid" in v for v in hardware_validate(spread))
    close = Register(coords=[(0, 0), (3, 0)])
    assert any("minimum" in v for v in hardware_validate(close))


def test_embed_config_validation():
    with pytest.raises(ValueError):
        EmbedConfig(mode="4D")
    with pytest.raises(ValueError):
        EmbedConfig(margin_target=0.5)


def test_lattice_modes_z_values():
    cfg2l = EmbedConfig(mode="2L", seed=0)
    zs = sorted({s[2] for s in _lattice_sites(cfg2l, 10)})
    assert zs == [0.0, pytest.approx(0.8 * 8.0)]
    cfg3d = EmbedConfig(mode="3D", seed=0, site_spacing=5.0)
    zs3 = sorted({s[2] for s in _lattice_sites(cfg3d, 10)})
    assert zs3 == [0.0, 5.0, 10.0]


def test_lattice_too_small_error():
    g = king55()
    with pytest.raises(ValueError, match="lattice too small"):
        sa_embed(g, EmbedConfig(mode="2D", seed=0, lattice_rings=1))


def test_king_own_coords_exact():
    g = king55()
    res = sa_embed(g, EmbedConfig(mode="2D", seed=7))
    assert res.recall == 1.0
    assert res.margin == 1.25
    assert res.missing_edges == [] and res.extra_edges == []
    assert hardware_validate(res.register) == []


def test_embed_deterministic():
    g = king55()
    a = sa_embed(g, EmbedConfig(mode="2D", seed=3, iterations=2000, restarts=2))
    b = sa_embed(g, EmbedConfig(mode="2D", seed=3, iterations=2000, restarts=2))
    assert a.to_dict() == b.to_dict()


def test_embed_result_recomputes_exactly():
    rng = random.Random("rec/0")
    n = 18
    edges = sorted({tuple(sorted(rng.sample(range(n), 2))) for _ in range(40)})
    g = Graph(n, edges)
    res = sa_embed(g, EmbedConfig(mode="2D", seed=1, iterations=3000, restarts=3))
    assert edge_recall(g, res.register) == res.recall
    assert blockade_margin(res.register, g) == res.margin


def test_hinge_value_known_placement():
    g = Graph(2, [])  # single non-edge pair
    cfg = EmbedConfig(mode="2D", seed=0)
    sites = _lattice_sites(cfg, 2)
    st = _SaState(g, sites, rb=8.0, margin_target=1.5, rng=random.Random(0))
    st.place(coords=[(0.0, 0.0), (6.0, 0.0)])
    # t_cut = 12; gap = (12 - 6)/8
    assert st.hinge == pytest.approx(0.75**2)
    st.place(coords=[(0.0, 0.0), (12.0, 0.0)])
    assert st.hinge == 0.0


def test_margin_target_pushes_non_edges_out():
    g = Graph(2, [])
    res = sa_embed(g, EmbedConfig(mode="2D", seed=2, iterations=2000, restarts=2,
                                  margin_target=1.5))
    assert res.margin >= 1.5


def test_ladder_monotone_and_preset():
    assert LADDER_PRESET == {"iterations": 30000, "restarts": 15}
    for s in range(2):
        rng = random.Random(f"lad/{s}")
        n = 20
        edges = sorted({tuple(sorted(rng.sample(range(n), 2))) for _ in range(50)})
        g = Graph(n, edges)
        out = ladder(g, EmbedConfig(seed=s, iterations=4000, restarts=3))
        recs = [out[m].recall for m in ("2D", "2L", "3D")]
        assert recs[0] <= recs[1] <= recs[2]


def test_margin_sweep_rows_and_monotone_recall():
    rng = random.Random("sweep/0")
    pts = [(rng.uniform(0, 30), rng.uniform(0, 30)) for _ in range(30)]
    g = geometric_adjacency(pts, radius=9.0)
    cfg = EmbedConfig(mode="2D", seed=5, iterations=6000, restarts=4)
    rows = margin_sweep(g, [1.0, 1.15, 1.3], cfg)
    assert [r["target_margin"] for r in rows] == [1.0, 1.15, 1.3]
    recalls = [r["recall"] for r in rows]
    assert all(a >= b for a, b in zip(recalls, recalls[1:]))
    assert all(r["near_valid_proxy"] is None for r in rows)


def test_margin_sweep_validation_and_error_rows():
    g = Graph(2, [(0, 1)])
    cfg = EmbedConfig(mode="2D", seed=0)
    with pytest.raises(ValueError, match="ascending"):
        margin_sweep(g, [1.2, 1.0], cfg)
    with pytest.raises(ValueError, match="length"):
        margin_sweep(g, [1.0], cfg, shots_per_target=[None, None])
    king = king55()
    rows = margin_sweep(king, [1.0], EmbedConfig(mode="2D", seed=0, lattice_rings=1))
    assert "error" in rows[0]


def test_pulse_spec_exact_values():
    base = pulse_spec(50)
    assert base.omega == 3.30
    assert base.duration_us == 4.0
    assert base.detuning["values_rad_per_us"] == [-9.9, 9.9]
    assert pulse_spec(81).duration_us == 6.0
    assert pulse_spec(80).duration_us == 4.0
    red = pulse_spec(50, variant="reduced_omega")
    assert red.omega == 1.63
    assert red.detuning["values_rad_per_us"] == [-4.89, 4.89]


def test_pulse_variants_shape():
    trap = pulse_spec(50, variant="trapezoid")
    assert trap.envelope["type"] == "trapezoid"
    assert trap.envelope["rise_us"] == 0.5 and trap.envelope["fall_us"] == 0.5
    knots = pulse_spec(50, variant="four_knot")
    assert knots.detuning["type"] == "piecewise_linear"
    assert len(knots.detuning["times_us"]) == 4
    assert knots.detuning["free_knots"] == [1, 2]
    cubic = pulse_spec(50, variant="cubic_detuning")
    assert cubic.detuning["type"] == "cubic"
    with pytest.raises(ValueError):
        pulse_spec(50, variant="square")


def test_pulse_detuning_sweeps_negative_to_positive():
    for variant in ("baseline", "trapezoid", "four_knot", "cubic_detuning",
                    "reduced_omega"):
        for n in (25, 100):
            sp = pulse_spec(n, variant=variant)
            vals = sp.detuning["values_rad_per_us"]
            assert vals[0] < 0 < vals[-1]
            assert sp.detuning["times_us"][0] == 0.0
            assert sp.detuning["times_us"][-1] == sp.duration_us


def test_hardware_profile_defaults():
    prof = HardwareProfile()
    assert prof.max_atoms == 100
    assert prof.fov_radius == 46.0
    assert prof.min_spacing == 5.0
