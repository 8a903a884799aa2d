"""Deterministic generators for the engineered benchmark graph families.

Every geometric family emits coordinates and declares the unit-disk (or
unit-ball) radius it was built with, so the result round-trips through
udg_check with recall 1.0 and no extra edges. Abstract families (hypercube,
complete_bipartite, cycle_chords, double_domination) carry no coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import Graph, euclidean, geometric_adjacency

EPS_REL = 1e-3  # relative slack baked into declared radii

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)


@dataclass
class DesignSpec:
    family: str
    params: dict = field(default_factory=dict)
    spacing: float = 5.0
    seed: int | None = None


def _geom(pts, radius: float, family: str, params: dict, spacing: float) -> Graph:
    g = geometric_adjacency(pts, radius)
    g.metadata = {
        "family": family,
        "params": dict(params),
        "spacing": spacing,
        "radius": radius,
        "density": g.density(),
    }
    return g


def _abstract(n: int, edges, family: str, params: dict) -> Graph:
    g = Graph(n, edges, metadata={"family": family, "params": dict(params)})
    g.metadata["density"] = g.density()
    return g


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _grid_pts(rows: int, cols: int, a: float):
    return [(c * a, r * a) for r in range(rows) for c in range(cols)]


def _king(p: dict, a: float) -> Graph:
    rows, cols = int(p.get("rows", 5)), int(p.get("cols", 5))
    _require(rows >= 1 and cols >= 1, "king needs rows, cols >= 1")
    return _geom(_grid_pts(rows, cols, a), a * SQ2 * (1 + EPS_REL),
                 "king", {"rows": rows, "cols": cols}, a)


def _extended_king(p: dict, a: float) -> Graph:
    # Chebyshev distance <= 2 includes the (1,2) and (2,2) offsets, so the
    # radius must reach 2*sqrt(2)*a, not 2*a.
    rows, cols = int(p.get("rows", 7)), int(p.get("cols", 7))
    _require(rows >= 1 and cols >= 1, "extended_king needs rows, cols >= 1")
    return _geom(_grid_pts(rows, cols, a), 2 * SQ2 * a * (1 + EPS_REL),
                 "extended_king", {"rows": rows, "cols": cols}, a)


def _sqrt5_king(p: dict, a: float) -> Graph:
    rows, cols = int(p.get("rows", 9)), int(p.get("cols", 9))
    _require(rows >= 1 and cols >= 1, "sqrt5_king needs rows, cols >= 1")
    return _geom(_grid_pts(rows, cols, a), math.sqrt(5.0) * a + 0.01 * a,
                 "sqrt5_king", {"rows": rows, "cols": cols}, a)


def _centered_hex(p: dict, a: float) -> Graph:
    rings = int(p.get("rings", 3))
    _require(rings >= 1, "hex radius < 1")
    pts = []
    for q in range(-rings, rings + 1):
        for r in range(-rings, rings + 1):
            if abs(q + r) <= rings:
                pts.append((a * (q + r / 2), a * SQ3 / 2 * r))
    return _geom(pts, a * (1 + EPS_REL), "centered_hex", {"rings": rings}, a)


def _planar_grid(p: dict, a: float) -> Graph:
    rows, cols = int(p.get("rows", 5)), int(p.get("cols", 10))
    _require(rows >= 1 and cols >= 1, "planar_grid needs rows, cols >= 1")
    return _geom(_grid_pts(rows, cols, a), a * (1 + EPS_REL),
                 "planar_grid", {"rows": rows, "cols": cols}, a)


def _trim_to(pts, radius: float, target: int):
    """Lexicographic removal of boundary vertices until len(pts) == target.

    Boundary = vertices of non-maximal degree at the family radius; the
    lexicographically smallest (x, y) among them goes first.
    """
    pts = [tuple(q) for q in pts]
    _require(target <= len(pts), "target_n larger than the untrimmed patch")
    while len(pts) > target:
        deg = [0] * len(pts)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if euclidean(pts[i], pts[j]) <= radius:
                    deg[i] += 1
                    deg[j] += 1
        dmax = max(deg)
        victims = [i for i in range(len(pts)) if deg[i] < dmax] or list(range(len(pts)))
        victims.sort(key=lambda i: (round(pts[i][0], 9), round(pts[i][1], 9)))
        pts.pop(victims[0])
    return pts


def _kagome(p: dict, a: float) -> Graph:
    cx, cy = int(p.get("cells_x", 6)), int(p.get("cells_y", 6))
    target = p.get("target_n", 100)
    _require(cx >= 1 and cy >= 1, "kagome needs cells_x, cells_y >= 1")
    basis = [(0.0, 0.0), (a, 0.0), (a / 2, SQ3 * a / 2)]
    pts = []
    for j in range(cy):
        for i in range(cx):
            ox, oy = 2 * a * i + a * j, SQ3 * a * j
            pts.extend((ox + bx, oy + by) for bx, by in basis)
    radius = a * (1 + EPS_REL)
    if target is not None:
        pts = _trim_to(pts, radius, int(target))
    params = {"cells_x": cx, "cells_y": cy, "target_n": target}
    return _geom(pts, radius, "kagome", params, a)


def _snub_square(p: dict, a: float) -> Graph:
    cx, cy = int(p.get("cells_x", 5)), int(p.get("cells_y", 5))
    target = p.get("target_n")
    _require(cx >= 1 and cy >= 1, "snub_square needs cells_x, cells_y >= 1")
    # One rotated square of side a per cell of a square Bravais lattice with
    # constant 2*a*cos(15 deg); triangles form between neighboring cells.
    lat = math.sqrt(2 + SQ3) * a
    rad = a / SQ2
    pts = []
    for j in range(cy):
        for i in range(cx):
            for adeg in (60.0, 150.0, 240.0, 330.0):
                t = math.radians(adeg)
                pts.append((i * lat + rad * math.cos(t), j * lat + rad * math.sin(t)))
    radius = a * (1 + EPS_REL)
    if target is not None:
        pts = _trim_to(pts, radius, int(target))
    params = {"cells_x": cx, "cells_y": cy, "target_n": target}
    return _geom(pts, radius, "snub_square", params, a)


def _hub_spoke(p: dict, a: float) -> Graph:
    hubs = int(p.get("hubs", 2))
    arms = int(p.get("arms", 5))
    arm_len = int(p.get("arm_len", 4))
    _require(hubs >= 1, "hub_spoke needs hubs >= 1")
    _require(1 <= arms <= 5, "hub_spoke arms must be 1..5 for a unit-disk layout")
    _require(arm_len >= 1, "hub_spoke needs arm_len >= 1")
    pts = []
    pitch = (2 * arm_len + 4) * a
    for h in range(hubs):
        hx = h * pitch
        pts.append((hx, 0.0))
        for k in range(arms):
            t = 2 * math.pi * k / arms
            for j in range(1, arm_len + 1):
                pts.append((hx + j * a * math.cos(t), j * a * math.sin(t)))
    return _geom(pts, a * (1 + EPS_REL), "hub_spoke",
                 {"hubs": hubs, "arms": arms, "arm_len": arm_len}, a)


def _sierpinski(p: dict, a: float) -> Graph:
    depth = int(p.get("depth", 3))
    _require(depth >= 0, "sierpinski needs depth >= 0")
    side = a * (2 ** depth)
    pts: set = set()

    def rec(p1, p2, p3, d):
        if d == 0:
            for q in (p1, p2, p3):
                pts.add((round(q[0], 9), round(q[1], 9)))
            return
        m12 = ((p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2)
        m23 = ((p2[0] + p3[0]) / 2, (p2[1] + p3[1]) / 2)
        m31 = ((p3[0] + p1[0]) / 2, (p3[1] + p1[1]) / 2)
        rec(p1, m12, m31, d - 1)
        rec(m12, p2, m23, d - 1)
        rec(m31, m23, p3, d - 1)

    rec((0.0, 0.0), (side, 0.0), (side / 2, side * SQ3 / 2), depth)
    return _geom(sorted(pts), a * (1 + EPS_REL), "sierpinski", {"depth": depth}, a)


def _disjoint_cliques(p: dict, a: float) -> Graph:
    num = int(p.get("num", 17))
    size = int(p.get("size", 3))
    _require(num >= 1 and size >= 1, "disjoint_cliques needs num, size >= 1")
    # Tight clusters on hex-packed centers; all intra-cluster distances stay
    # within the radius, inter-cluster ones well beyond it.
    per_row = math.ceil(math.sqrt(num))
    pitch = 3 * a
    pts = []
    for c in range(num):
        row, col = divmod(c, per_row)
        cx = col * pitch + (row % 2) * pitch / 2
        cy = row * pitch * SQ3 / 2
        if size == 1:
            pts.append((cx, cy))
            continue
        # side-a polygon for size <= 3 (all pairs exactly a apart),
        # circumradius a/2 polygon beyond that (diameter <= a)
        r = a / (2 * math.sin(math.pi / size)) if size <= 3 else a / 2
        for k in range(size):
            t = 2 * math.pi * k / size
            pts.append((cx + r * math.cos(t), cy + r * math.sin(t)))
    return _geom(pts, a * (1 + EPS_REL), "disjoint_cliques",
                 {"num": num, "size": size}, a)


def _complete_bipartite(p: dict, a: float) -> Graph:
    left, right = int(p.get("left", 25)), int(p.get("right", 25))
    _require(left >= 1 and right >= 1, "complete_bipartite needs left, right >= 1")
    edges = [(i, left + j) for i in range(left) for j in range(right)]
    return _abstract(left + right, edges, "complete_bipartite",
                     {"left": left, "right": right})


DEFAULT_CHORDS = [(0, 6), (2, 8), (4, 10), (6, 12), (8, 14), (10, 16), (12, 18), (14, 20)]


def _cycle_chords(p: dict, a: float) -> Graph:
    n = int(p.get("n", 30))
    chords = p.get("chords")
    if chords is None:
        chords = DEFAULT_CHORDS
    _require(n >= 3, "cycle_chords needs n >= 3")
    for (u, v) in chords:
        _require(0 <= u < n and 0 <= v < n and u != v, f"bad chord ({u},{v})")
    edges = [(i, (i + 1) % n) for i in range(n)] + [tuple(c) for c in chords]
    return _abstract(n, edges, "cycle_chords",
                     {"n": n, "chords": [list(c) for c in chords]})


def _hypercube(p: dict, a: float) -> Graph:
    dim = int(p.get("dim", 4))
    _require(dim >= 1, "hypercube needs dim >= 1")
    n = 1 << dim
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)]
    return _abstract(n, edges, "hypercube", {"dim": dim})


def _dodecahedron(p: dict, a: float) -> Graph:
    phi = (1 + math.sqrt(5)) / 2
    raw = [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    for s1 in (1, -1):
        for s2 in (1, -1):
            raw.append((0.0, s1 / phi, s2 * phi))
            raw.append((s1 / phi, s2 * phi, 0.0))
            raw.append((s1 * phi, 0.0, s2 / phi))
    scale = a / (2 / phi)  # canonical edge length 2/phi -> spacing
    pts = [(x * scale, y * scale, z * scale) for (x, y, z) in raw]
    return _geom(pts, a * (1 + EPS_REL), "dodecahedron", {}, a)


def _bilayer_king(p: dict, a: float) -> Graph:
    rows, cols = int(p.get("rows", 5)), int(p.get("cols", 4))
    gap = float(p.get("layer_gap", 3.0))
    radius = float(p.get("radius", 8.0))
    _require(rows >= 1 and cols >= 1, "bilayer_king needs rows, cols >= 1")
    _require(gap > 0 and radius > 0, "bilayer_king needs layer_gap, radius > 0")
    pts = [(c * a, r * a, z) for z in (0.0, gap) for r in range(rows) for c in range(cols)]
    g = _geom(pts, radius, "bilayer_king",
              {"rows": rows, "cols": cols, "layer_gap": gap, "radius": radius}, a)
    return g


def _double_domination(p: dict, a: float) -> Graph:
    backbone = int(p.get("backbone", 16))
    _require(backbone >= 1, "double_domination needs backbone >= 1")
    edges = []
    if backbone == 2:
        edges.append((0, 1))
    elif backbone >= 3:
        edges.extend((i, (i + 1) % backbone) for i in range(backbone))
    # two private anchors per backbone vertex; the anchor set is the
    # unique optimum (taking j backbone vertices caps the set at 2p - j)
    for i in range(backbone):
        edges.append((i, backbone + 2 * i))
        edges.append((i, backbone + 2 * i + 1))
    return _abstract(3 * backbone, edges, "double_domination", {"backbone": backbone})


@dataclass
class FamilyDef:
    build: object
    defaults: dict
    summary: str
    geometric: bool


FAMILIES: dict[str, FamilyDef] = {
    "king": FamilyDef(_king, {"rows": 5, "cols": 5},
                      "king-move lattice (8-neighbor grid)", True),
    "extended_king": FamilyDef(_extended_king, {"rows": 7, "cols": 7},
                               "Chebyshev-distance-2 grid", True),
    "sqrt5_king": FamilyDef(_sqrt5_king, {"rows": 9, "cols": 9},
                            "grid with sqrt(5) reach (adds knight offsets)", True),
    "centered_hex": FamilyDef(_centered_hex, {"rings": 3},
                              "triangular-lattice hexagonal patch", True),
    "kagome": FamilyDef(_kagome, {"cells_x": 6, "cells_y": 6, "target_n": 100},
                        "kagome (3.6.3.6) patch, trimmed to target size", True),
    "snub_square": FamilyDef(_snub_square, {"cells_x": 5, "cells_y": 5},
                             "snub-square (3.3.4.3.4) patch", True),
    "planar_grid": FamilyDef(_planar_grid, {"rows": 5, "cols": 10},
                             "4-neighbor rectangular grid", True),
    "hub_spoke": FamilyDef(_hub_spoke, {"hubs": 2, "arms": 5, "arm_len": 4},
                           "hubs with radial path arms", True),
    "sierpinski": FamilyDef(_sierpinski, {"depth": 3},
                            "Sierpinski gasket points as a unit-disk graph", True),
    "disjoint_cliques": FamilyDef(_disjoint_cliques, {"num": 17, "size": 3},
                                  "tight point clusters on hex-packed centers", True),
    "complete_bipartite": FamilyDef(_complete_bipartite, {"left": 25, "right": 25},
                                    "complete bipartite K_{a,b} (abstract)", False),
    "cycle_chords": FamilyDef(_cycle_chords, {"n": 30, "chords": None},
                              "cycle plus explicit chord list (abstract)", False),
    "hypercube": FamilyDef(_hypercube, {"dim": 4},
                           "boolean hypercube Q_d (abstract)", False),
    "dodecahedron": FamilyDef(_dodecahedron, {},
                              "regular dodecahedron skeleton as a unit-ball graph", True),
    "bilayer_king": FamilyDef(_bilayer_king,
                              {"rows": 5, "cols": 4, "layer_gap": 3.0, "radius": 8.0},
                              "two stacked king layers as a unit-ball graph", True),
    "double_domination": FamilyDef(_double_domination, {"backbone": 16},
                                   "backbone cycle with two private anchors per vertex; "
                                   "unique optimum by construction (abstract)", False),
}


def generate(spec: DesignSpec) -> Graph:
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family: {spec.family!r}")
    if spec.spacing <= 0:
        raise ValueError("spacing must be > 0")
    fam = FAMILIES[spec.family]
    params = dict(fam.defaults)
    for k in spec.params:
        if k not in fam.defaults:
            raise ValueError(f"unknown parameter {k!r} for family {spec.family!r}")
    params.update(spec.params)
    return fam.build(params, float(spec.spacing))


def family_alpha_formula(spec: DesignSpec) -> int | None:
    """Closed-form independence number where one is known; None otherwise."""
    p = dict(FAMILIES[spec.family].defaults) if spec.family in FAMILIES else {}
    p.update(spec.params)
    if spec.family == "king":
        return math.ceil(int(p["rows"]) / 2) * math.ceil(int(p["cols"]) / 2)
    if spec.family == "planar_grid":
        return math.ceil(int(p["rows"]) * int(p["cols"]) / 2)
    if spec.family == "disjoint_cliques":
        return int(p["num"])
    if spec.family == "complete_bipartite":
        return max(int(p["left"]), int(p["right"]))
    if spec.family == "hypercube":
        return 1 << (int(p["dim"]) - 1)
    if spec.family == "edgeless":
        return int(p["n"])
    return None
