"""Embedding graphs onto physical atom-register geometries.

Simulated annealing over discrete triangular-lattice sites (optionally two
stacked planes, or a full 3D stack) searches for a placement that realizes
as many target edges as possible within the blockade radius, while keeping
non-edges outside it. Also: hardware constraint validation and exported
pulse schedules.
"""
from __future__ import annotations

import json
import math
import random
import statistics
from dataclasses import dataclass, field, replace

R_B_DEFAULT = 8.0
LAMBDA_MAX = 8.0  # final weight of the margin hinge penalty


@dataclass
class Register:
    coords: list
    r_b: float = R_B_DEFAULT
    lattice: dict = field(default_factory=lambda: {"type": "free"})
    node_map: list[int] | None = None

    def __post_init__(self) -> None:
        self.coords = [tuple(float(x) for x in p) for p in self.coords]
        if any(not all(math.isfinite(x) for x in p) for p in self.coords):
            raise ValueError("non-finite register coordinates")
        if self.r_b <= 0:
            raise ValueError("r_b must be > 0")
        if self.node_map is None:
            self.node_map = list(range(len(self.coords)))
        if sorted(self.node_map) != list(range(len(self.coords))):
            raise ValueError("node_map must be a permutation of coordinate indices")

    def positions(self) -> list[tuple]:
        """Coordinates in graph-vertex order."""
        return [self.coords[self.node_map[v]] for v in range(len(self.coords))]

    def to_dict(self) -> dict:
        return {
            "coords": [list(p) for p in self.coords],
            "r_b": self.r_b,
            "lattice": self.lattice,
            "node_map": self.node_map,
        }

    def save(self, path: str) -> None:
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
            f.write("\n")

    @classmethod
    def load(cls, path: str) -> "Register":
        with open(path) as f:
            d = json.load(f)
        return cls(coords=d["coords"], r_b=d["r_b"],
                   lattice=d.get("lattice", {"type": "free"}),
                   node_map=d.get("node_map"))


@dataclass
class EmbedConfig:
    mode: str = "2D"  # 2D | 2L | 3D
    site_spacing: float = 5.0
    layer_gap: float | None = None  # default 0.80 * r_b
    r_b: float = R_B_DEFAULT
    iterations: int = 20000
    restarts: int = 10
    seed: int = 0
    margin_target: float | None = None
    seed_placement: list | None = None  # coords seeding one restart
    lattice_rings: int | None = None  # override the adaptive sheet size

    def __post_init__(self) -> None:
        if self.mode not in ("2D", "2L", "3D"):
            raise ValueError(f"mode must be 2D, 2L or 3D, got {self.mode!r}")
        if self.iterations < 1 or self.restarts < 1:
            raise ValueError("iterations and restarts must be >= 1")
        if self.margin_target is not None and self.margin_target < 1:
            raise ValueError("margin_target must be >= 1")


LADDER_PRESET = {"iterations": 30000, "restarts": 15}


@dataclass
class EmbedResult:
    register: Register
    recall: float
    missing_edges: list
    extra_edges: list
    margin: float
    per_restart: list[dict]
    mode: str

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "recall": self.recall,
            "margin": self.margin,
            "missing_edges": [list(e) for e in self.missing_edges],
            "extra_edges": [list(e) for e in self.extra_edges],
            "per_restart": self.per_restart,
            "register": self.register.to_dict(),
        }


def _dist(p, q) -> float:
    return math.dist(p, q)


def edge_recall(target, reg: Register) -> float:
    """Fraction of target edges whose endpoints sit within r_b; 1.0 when
    the target has no edges."""
    pos = reg.positions()
    if len(pos) != target.n:
        raise ValueError("register size does not match target graph")
    if target.m == 0:
        return 1.0
    ok = sum(1 for (u, v) in target.edges if _dist(pos[u], pos[v]) <= reg.r_b)
    return ok / target.m


def missing_and_extra(target, reg: Register):
    pos = reg.positions()
    if len(pos) != target.n:
        raise ValueError("register size does not match target graph")
    have = target.edge_set()
    missing = [e for e in target.edges if _dist(pos[e[0]], pos[e[1]]) > reg.r_b]
    extra = [
        (i, j)
        for i in range(target.n)
        for j in range(i + 1, target.n)
        if (i, j) not in have and _dist(pos[i], pos[j]) <= reg.r_b
    ]
    return missing, extra


def blockade_margin(reg: Register, target) -> float:
    """Smallest non-edge distance over r_b; +inf for a complete target."""
    pos = reg.positions()
    if len(pos) != target.n:
        raise ValueError("register size does not match target graph")
    have = target.edge_set()
    best = math.inf
    for i in range(target.n):
        for j in range(i + 1, target.n):
            if (i, j) not in have:
                d = _dist(pos[i], pos[j])
                if d < best:
                    best = d
    return best / reg.r_b if math.isfinite(best) else math.inf


@dataclass
class HardwareProfile:
    max_atoms: int = 100
    fov_radius: float = 46.0
    min_spacing: float = 5.0


def hardware_validate(reg: Register, profile: HardwareProfile | None = None) -> list[str]:
    """Constraint check; an empty list means the register is loadable."""
    prof = profile or HardwareProfile()
    violations = []
    n = len(reg.coords)
    if n > prof.max_atoms:
        violations.append(f"atom count {n} exceeds maximum {prof.max_atoms}")
    if n == 0:
        return violations
    dim = len(reg.coords[0])
    centroid = tuple(sum(p[k] for p in reg.coords) / n for k in range(dim))
    for i, p in enumerate(reg.coords):
        r = _dist(p, centroid)
        if r > prof.fov_radius:
            violations.append(
                f"atom {i} is {r:.2f} um from centroid (limit {prof.fov_radius})")
    for i in range(n):
        for j in range(i + 1, n):
            d = _dist(reg.coords[i], reg.coords[j])
            if d < prof.min_spacing:
                violations.append(
                    f"atoms {i},{j} are {d:.2f} um apart (minimum {prof.min_spacing})")
    return violations


def _lattice_sites(cfg: EmbedConfig, n: int) -> list[tuple]:
    """Triangular sheet(s) spanning the hardware field of view."""
    a = cfg.site_spacing
    if cfg.lattice_rings is not None:
        rings = cfg.lattice_rings
    else:
        # ~7 candidate sites per atom; hex sheet of r rings has 1+3r(r+1)
        rings = 1
        while 1 + 3 * rings * (rings + 1) < 7 * max(n, 1):
            rings += 1
    layer = []
    for q in range(-rings, rings + 1):
        for r in range(-rings, rings + 1):
            if abs(q + r) <= rings:
                layer.append((a * (q + r / 2), a * math.sqrt(3) / 2 * r))
    gap = cfg.layer_gap if cfg.layer_gap is not None else 0.80 * cfg.r_b
    if cfg.mode == "2D":
        zs = [0.0]
    elif cfg.mode == "2L":
        zs = [0.0, gap]
    else:
        zs = [0.0, a, 2 * a]
    return [(x, y, z) for z in zs for (x, y) in layer]


def _pad3(p) -> tuple:
    p = tuple(float(x) for x in p)
    return p + (0.0,) * (3 - len(p)) if len(p) < 3 else p[:3]


def _spring_positions(target, rng: random.Random, spacing: float) -> list[tuple]:
    """Light force-directed layout; deterministic for a given rng."""
    n = target.n
    k = spacing * 1.2
    pos = [[rng.uniform(0, k * math.sqrt(n)), rng.uniform(0, k * math.sqrt(n))]
           for _ in range(n)]
    step = k
    for _ in range(60):
        disp = [[0.0, 0.0] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                dx = pos[i][0] - pos[j][0]
                dy = pos[i][1] - pos[j][1]
                d2 = dx * dx + dy * dy or 1e-6
                f = k * k / d2
                disp[i][0] += dx * f
                disp[i][1] += dy * f
                disp[j][0] -= dx * f
                disp[j][1] -= dy * f
        for (u, v) in target.edges:
            dx = pos[u][0] - pos[v][0]
            dy = pos[u][1] - pos[v][1]
            d = math.hypot(dx, dy) or 1e-3
            f = d / k
            disp[u][0] -= dx / d * f * d
            disp[u][1] -= dy / d * f * d
            disp[v][0] += dx / d * f * d
            disp[v][1] += dy / d * f * d
        for i in range(n):
            d = math.hypot(*disp[i]) or 1e-9
            s = min(step, d)
            pos[i][0] += disp[i][0] / d * s
            pos[i][1] += disp[i][1] / d * s
        step *= 0.95
    return [tuple(p) for p in pos]


def _project_to_sites(coords, sites) -> list[int]:
    """Nearest free site per vertex, in vertex order."""
    taken: set[int] = set()
    out = []
    for p in coords:
        p3 = _pad3(p)
        best = -1
        bd = math.inf
        for si, s in enumerate(sites):
            if si in taken:
                continue
            d = _dist(p3, s)
            if d < bd:
                bd = d
                best = si
        taken.add(best)
        out.append(best)
    return out


class _SaState:
    """One annealing run: placement of n atoms, some on lattice sites."""

    def __init__(self, target, sites, rb, margin_target, rng):
        self.n = target.n
        self.sites = sites
        self.rb2 = rb * rb
        self.rb = rb
        self.rng = rng
        self.margin_target = margin_target
        self.t_cut = (margin_target * rb) if margin_target else 0.0
        self.nbrs = [[] for _ in range(self.n)]
        for (u, v) in target.edges:
            self.nbrs[u].append(v)
            self.nbrs[v].append(u)
        self.non_nbrs = [
            [u for u in range(self.n) if u != v and u not in set(self.nbrs[v])]
            for v in range(self.n)
        ]
        self.pos: list[tuple] = [None] * self.n
        self.site_of: list[int | None] = [None] * self.n
        self.occupied: set[int] = set()

    def place(self, coords=None, site_ids=None) -> None:
        self.occupied.clear()
        if site_ids is not None:
            for v, si in enumerate(site_ids):
                self.pos[v] = self.sites[si]
                self.site_of[v] = si
                self.occupied.add(si)
        else:
            for v, p in enumerate(coords):
                self.pos[v] = _pad3(p)
                self.site_of[v] = None
        self.missing = sum(
            1 for v in range(self.n) for u in self.nbrs[v] if u > v
            and self._d2(u, v) > self.rb2)
        self.hinge = self._hinge_total()

    def _d2(self, u, v) -> float:
        p, q = self.pos[u], self.pos[v]
        dx = p[0] - q[0]
        dy = p[1] - q[1]
        dz = p[2] - q[2]
        return dx * dx + dy * dy + dz * dz

    def _pair_hinge(self, u, v) -> float:
        d2 = self._d2(u, v)
        if d2 >= self.t_cut * self.t_cut:
            return 0.0
        gap = (self.t_cut - math.sqrt(d2)) / self.rb
        return gap * gap

    def _hinge_total(self) -> float:
        if not self.margin_target:
            return 0.0
        return sum(
            self._pair_hinge(u, v)
            for v in range(self.n) for u in self.non_nbrs[v] if u > v)

    def _local(self, v) -> tuple[int, float]:
        """(missing, hinge) contributions of all pairs involving v."""
        miss = sum(1 for u in self.nbrs[v] if self._d2(u, v) > self.rb2)
        hin = 0.0
        if self.margin_target:
            hin = sum(self._pair_hinge(u, v) for u in self.non_nbrs[v])
        return miss, hin

    def random_free_site(self) -> int | None:
        for _ in range(200):
            si = self.rng.randrange(len(self.sites))
            if si not in self.occupied:
                return si
        return None

    def propose_relocate(self, v, si) -> tuple[int, float]:
        m0, h0 = self._local(v)
        keep = self.pos[v]
        self.pos[v] = self.sites[si]
        m1, h1 = self._local(v)
        self.pos[v] = keep
        return m1 - m0, h1 - h0

    def apply_relocate(self, v, si) -> None:
        if self.site_of[v] is not None:
            self.occupied.discard(self.site_of[v])
        self.pos[v] = self.sites[si]
        self.site_of[v] = si
        self.occupied.add(si)

    def propose_swap(self, u, v) -> tuple[int, float]:
        m0u, h0u = self._local(u)
        m0v, h0v = self._local(v)
        self.pos[u], self.pos[v] = self.pos[v], self.pos[u]
        m1u, h1u = self._local(u)
        m1v, h1v = self._local(v)
        self.pos[u], self.pos[v] = self.pos[v], self.pos[u]
        # the (u, v) pair itself appears in both locals but its geometry is
        # unchanged by a swap, so the double count cancels in the difference
        return (m1u + m1v) - (m0u + m0v), (h1u + h1v) - (h0u + h0v)

    def apply_swap(self, u, v) -> None:
        self.pos[u], self.pos[v] = self.pos[v], self.pos[u]
        self.site_of[u], self.site_of[v] = self.site_of[v], self.site_of[u]


def _anneal(state: _SaState, iterations: int, margin_on: bool):
    rng = state.rng
    n = state.n
    # temperature from the spread of probe-move deltas
    deltas = []
    for _ in range(100):
        if rng.random() < 0.5 or n < 2:
            v = rng.randrange(n)
            si = state.random_free_site()
            if si is None:
                continue
            dm, dh = state.propose_relocate(v, si)
        else:
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v:
                continue
            dm, dh = state.propose_swap(u, v)
        deltas.append(dm + dh)
    t0 = statistics.pstdev(deltas) if len(deltas) > 1 else 0.0
    if t0 < 1e-12:
        t0 = 1.0
    t_end = max(1e-3 * t0, 1e-9)
    cool = (t_end / t0) ** (1.0 / iterations)

    best_pos = list(state.pos)
    best_key = (state.missing, state.hinge)
    temp = t0
    for it in range(iterations):
        lam = LAMBDA_MAX * (it / iterations) if margin_on else 0.0
        if rng.random() < 0.5 or n < 2:
            v = rng.randrange(n)
            si = state.random_free_site()
            if si is None:
                temp *= cool
                continue
            dm, dh = state.propose_relocate(v, si)
            de = dm + lam * dh
            if de <= 0 or rng.random() < math.exp(-de / temp):
                state.apply_relocate(v, si)
                state.missing += dm
                state.hinge += dh
        else:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                dm, dh = state.propose_swap(u, v)
                de = dm + lam * dh
                if de <= 0 or rng.random() < math.exp(-de / temp):
                    state.apply_swap(u, v)
                    state.missing += dm
                    state.hinge += dh
        key = (state.missing, state.hinge)
        if key < best_key:
            best_key = key
            best_pos = list(state.pos)
        temp *= cool
    return best_pos


def sa_embed(target, cfg: EmbedConfig) -> EmbedResult:
    """Best-of-restarts annealed placement.

    Recall is the primary score and margin the tie-break; restart r draws
    from its own RNG stream (seed, r). Restart 0 starts from an explicit
    seed placement when given, else from the target's own coordinates when
    it has any; the next restart starts from a spring layout projected to
    free sites; the rest start random. Deterministic for a fixed config.
    """
    sites = _lattice_sites(cfg, target.n)
    if target.n > len(sites):
        raise ValueError(
            f"lattice too small: {len(sites)} sites for {target.n} atoms")
    margin_on = cfg.margin_target is not None

    inits: list[tuple[str, object]] = []
    if cfg.seed_placement is not None:
        if len(cfg.seed_placement) != target.n:
            raise ValueError("seed_placement size does not match target")
        inits.append(("seed", [_pad3(p) for p in cfg.seed_placement]))
    if target.coords is not None:
        inits.append(("own", [_pad3(p) for p in target.coords]))
    inits.append(("spring", None))

    best = None  # (recall, margin, -restart) maximized
    per_restart = []
    winner_pos = None
    for r in range(cfg.restarts):
        rng = random.Random(f"{cfg.seed}/{r}")
        state = _SaState(target, sites, cfg.r_b, cfg.margin_target, rng)
        if r < len(inits):
            kind, coords = inits[r]
            if kind == "spring":
                spring = _spring_positions(target, rng, cfg.site_spacing)
                state.place(site_ids=_project_to_sites(spring, sites))
            else:
                state.place(coords=coords)
        else:
            ids = rng.sample(range(len(sites)), target.n)
            state.place(site_ids=ids)
        pos = _anneal(state, cfg.iterations, margin_on)
        reg = Register(coords=pos, r_b=cfg.r_b, node_map=list(range(target.n)))
        rec = edge_recall(target, reg)
        marg = blockade_margin(reg, target)
        per_restart.append({"restart": r, "recall": rec, "margin": marg})
        key = (rec, marg, -r)
        if best is None or key > best:
            best = key
            winner_pos = pos

    lattice_desc = {
        "type": "triangular",
        "mode": cfg.mode,
        "site_spacing": cfg.site_spacing,
        "layer_gap": cfg.layer_gap if cfg.layer_gap is not None else 0.80 * cfg.r_b,
    }
    reg = Register(coords=winner_pos, r_b=cfg.r_b, lattice=lattice_desc,
                   node_map=list(range(target.n)))
    missing, extra = missing_and_extra(target, reg)
    return EmbedResult(
        register=reg,
        recall=edge_recall(target, reg),
        missing_edges=missing,
        extra_edges=extra,
        margin=blockade_margin(reg, target),
        per_restart=per_restart,
        mode=cfg.mode,
    )


def ladder(target, cfg: EmbedConfig) -> dict:
    """2D -> 2L -> 3D chain, each stage seeding the next, so recall is
    monotone non-decreasing across the returned stages."""
    out: dict[str, EmbedResult] = {}
    r2d = sa_embed(target, replace(cfg, mode="2D"))
    out["2D"] = r2d
    r2l = sa_embed(target, replace(
        cfg, mode="2L", seed_placement=r2d.register.positions()))
    out["2L"] = r2l
    out["3D"] = sa_embed(target, replace(
        cfg, mode="3D", seed_placement=r2l.register.positions()))
    return out


def margin_sweep(
    target,
    targets: list[float],
    cfg: EmbedConfig,
    shots_per_target: list | None = None,
) -> list[dict]:
    """One constrained embedding per target margin; plot-ready rows."""
    if list(targets) != sorted(targets):
        raise ValueError("targets must be sorted ascending")
    if shots_per_target is not None and len(shots_per_target) != len(targets):
        raise ValueError("shots_per_target length must match targets")
    rows = []
    alpha = None
    for i, tm in enumerate(targets):
        try:
            res = sa_embed(target, replace(cfg, margin_target=tm))
        except Exception as exc:  # per-point failure: record, keep sweeping
            rows.append({"target_margin": tm, "error": str(exc)})
            continue
        row = {
            "target_margin": tm,
            "achieved_margin": res.margin,
            "recall": res.recall,
            "near_valid_proxy": None,
        }
        if shots_per_target is not None and shots_per_target[i] is not None:
            from .mis import solve
            from .shots import analyze
            if alpha is None:
                alpha = solve(target).alpha
            rep = analyze(shots_per_target[i], target, alpha, regime="embedded")
            row["near_valid_proxy"] = rep.near_valid_weight_fraction
        rows.append(row)
    return rows


# --- pulse schedules ---------------------------------------------------

OMEGA_BASELINE = 3.30  # rad/us
OMEGA_REDUCED = 1.63
PULSE_VARIANTS = ("baseline", "trapezoid", "four_knot", "cubic_detuning",
                  "reduced_omega")


@dataclass
class PulseSpec:
    omega: float
    duration_us: float
    detuning: dict
    envelope: dict
    variant_name: str

    def __post_init__(self) -> None:
        if self.duration_us <= 0:
            raise ValueError("duration must be > 0")
        times = self.detuning.get("times_us")
        if times is not None and (times[0] != 0.0 or times[-1] != self.duration_us):
            raise ValueError("detuning waveform must span the full duration")

    def to_dict(self) -> dict:
        return {
            "variant": self.variant_name,
            "omega_rad_per_us": self.omega,
            "duration_us": self.duration_us,
            "detuning": self.detuning,
            "envelope": self.envelope,
        }


def pulse_spec(n_atoms: int, variant: str = "baseline") -> PulseSpec:
    """Exported drive schedule; data only, nothing is simulated.

    The ramp duration stretches from 4 to 6 us at n_atoms >= 81. All
    detuning waveforms sweep from negative to positive; the baseline span
    is +-3 * omega.
    """
    if variant not in PULSE_VARIANTS:
        raise ValueError(f"unknown pulse variant: {variant!r}")
    duration = 6.0 if n_atoms >= 81 else 4.0
    omega = OMEGA_REDUCED if variant == "reduced_omega" else OMEGA_BASELINE
    span = round(3 * omega, 6)
    detuning = {
        "type": "linear",
        "times_us": [0.0, duration],
        "values_rad_per_us": [-span, span],
    }
    envelope = {"type": "constant", "omega_rad_per_us": omega}
    if variant == "trapezoid":
        envelope = {
            "type": "trapezoid",
            "rise_us": 0.5,
            "fall_us": 0.5,
            "plateau_omega_rad_per_us": omega,
        }
    elif variant == "four_knot":
        detuning = {
            "type": "piecewise_linear",
            "times_us": [0.0, duration / 3, 2 * duration / 3, duration],
            "values_rad_per_us": [-span, -span / 3, span / 3, span],
            "free_knots": [1, 2],
        }
    elif variant == "cubic_detuning":
        detuning = {
            "type": "cubic",
            "times_us": [0.0, duration / 3, 2 * duration / 3, duration],
            "values_rad_per_us": [-span, -span / 3, span / 3, span],
        }
    return PulseSpec(
        omega=omega,
        duration_us=duration,
        detuning=detuning,
        envelope=envelope,
        variant_name=variant,
    )
