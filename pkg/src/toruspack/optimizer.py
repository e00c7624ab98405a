"""Linearized inflation of equal-disk packings on a fixed torus.

Each iteration solves a small LP: maximize the radius increase dr over center
moves dp, subject to first-order non-overlap for every near pair,

    u_ij . (dp_j - dp_i) - 2 dr >= -(d_ij - 2 r),

and a box trust region on dp.  Disk 0 is pinned to remove translations.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from . import lattice as lat
from .cyclotomic import QuadExt
from .errors import InvalidPackingError
from .lattice import Lattice2
from .packing import (DEFAULT_TOL, TorusPacking, _float_pairs, contact_graph, density,
                      min_periodic_distance, subpacking, validate)
from .rigidity import RigidityReport, analyze


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 2000
    step_cap: float = 0.05  # trust region, in units of the current radius
    convergence_tol: float = 1e-13  # on the relative radius gain per iteration
    seed: int = 0
    activation: float = 0.15
    snap_denominator: int = 64

    def __post_init__(self):
        if self.max_iters < 1 or self.step_cap <= 0 or self.convergence_tol <= 0:
            raise ValueError("optimizer settings must be positive")


def random_packing(n: int, l: Lattice2, seed: int) -> TorusPacking:
    """n uniform centers, radius half the minimum periodic distance."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    centers = [tuple(float(x) for x in row) for row in rng.random((n, 2))]
    probe = TorusPacking(l, tuple(centers), 1.0)
    return TorusPacking(l, probe.centers, min_periodic_distance(probe) / 2)


def _float_copy(p: TorusPacking) -> TorusPacking:
    if not p.exact:
        return p
    return TorusPacking(p.lattice, tuple((float(u), float(v)) for u, v in p.centers),
                        float(p.radius), p.labels)


@dataclass
class ImproveResult:
    packing: TorusPacking
    iterations: int
    converged: bool
    degenerate: bool = False
    snapped: bool = False
    history: list = field(default_factory=list, repr=False)


def _lp_step(p: TorusPacking, cap: float, activation: float):
    n, r = p.n, float(p.radius)
    B = p.lattice.float_matrix()
    pts = p.float_centers() @ B
    rows, rhs = [], []
    for i, j, w, d in _float_pairs(p, cutoff=2 * r * (1 + activation)):
        row = np.zeros(2 * n + 1)
        if i != j:
            e = pts[j] + np.array(w, dtype=float) @ B - pts[i]
            u = e / d
            row[2 * j:2 * j + 2] -= u
            row[2 * i:2 * i + 2] += u
        row[-1] = 2.0
        rows.append(row)
        rhs.append(d - 2 * r)
    if not rows:
        return np.zeros(2 * n), cap, 0
    bounds = [(0.0, 0.0)] * 2 + [(-cap, cap)] * (2 * n - 2) + [(0.0, cap)]
    c = np.zeros(2 * n + 1)
    c[-1] = -1.0
    res = linprog(c, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds, method="highs")
    if res.status != 0:
        return None, 0.0, res.status
    return res.x[:-1], res.x[-1], 0


def improve(p: TorusPacking, cfg: OptimizerConfig = OptimizerConfig()) -> ImproveResult:
    """Inflate p on its fixed torus until the radius stops growing."""
    if not validate(p).valid:
        raise InvalidPackingError("improve needs a valid packing")
    start = p
    cur = _float_copy(p)
    B = cur.lattice.float_matrix()
    Binv = np.linalg.inv(B)
    cap = cfg.step_cap
    history = [float(cur.radius)]
    degenerate = False
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        r = float(cur.radius)
        dp, dr, status = _lp_step(cur, cap * r, cfg.activation)
        if dp is None:
            degenerate = True
            break
        if dr <= cfg.convergence_tol * r:
            converged = True
            break
        moved = cur.float_centers() + dp.reshape(-1, 2) @ Binv
        trial = TorusPacking(cur.lattice, tuple(map(tuple, moved)), r)
        new_r = min(r + dr, min_periodic_distance(trial) / 2)
        gain = new_r - r
        if gain <= 0:
            cap /= 2
            if cap * r < 1e-15:
                converged = True
                break
            continue
        cur = trial.with_centers(trial.centers, radius=new_r)
        history.append(new_r)
        if gain < 0.5 * dr:
            cap = max(cap / 2, 1e-12)
        else:
            cap = min(cap * 2, cfg.step_cap)
        if gain <= cfg.convergence_tol * r:
            converged = True
            break
    result = ImproveResult(cur, it, converged, degenerate, history=history)
    snapped = snap(cur, cfg.snap_denominator)
    if snapped is not None:
        result.packing = snapped
        result.snapped = True
    if float(result.packing.radius) < float(start.radius) - 1e-15:
        result.packing = start
    return result


def snap(p: TorusPacking, max_den: int = 64, tol: float = 1e-7) -> TorusPacking | None:
    """Exact packing with centers on the 1/max_den grid, or None.

    Only attempted for exact lattices.  The radius becomes half the exact
    minimum distance, which must have a square root in Q(sqrt 3).
    """
    if not p.lattice.exact:
        return None
    centers = []
    u0, v0 = p.centers[0]
    for u, v in p.centers:
        u, v = (float(u) - float(u0)) % 1.0, (float(v) - float(v0)) % 1.0
        fu, fv = Fraction(float(u)).limit_denominator(max_den), Fraction(float(v)).limit_denominator(max_den)
        if abs(float(fu) - u) > 1e-6 or abs(float(fv) - v) > 1e-6:
            return None
        centers.append((QuadExt(fu), QuadExt(fv)))
    probe = TorusPacking(p.lattice, tuple(centers), QuadExt(1), p.labels)
    best = validate(probe).min_distance_sq
    root = best.sqrt()
    if root is None or root.sign() <= 0:
        return None
    exact = TorusPacking(p.lattice, tuple(centers), root / 2, p.labels)
    if abs(float(exact.radius) - float(p.radius)) > tol * float(p.radius):
        return None
    if float(exact.radius) < float(p.radius) * (1 - 1e-12):
        return None
    return exact


# -- spines ---------------------------------------------------------------------------


@dataclass
class SpineReport:
    spine: tuple
    rattlers: tuple
    spine_jammed: bool
    report: RigidityReport | None = None


def spine(p: TorusPacking, tol: float = DEFAULT_TOL) -> SpineReport:
    """Strip disks with at most two contacts (cascading), then analyze the rest."""
    g = contact_graph(p, tol)
    alive = set(range(p.n))
    changed = True
    while changed:
        changed = False
        deg = dict.fromkeys(alive, 0)
        for i, j, _ in g.edges:
            if i in alive and j in alive:
                deg[i] += 1
                deg[j] += 1
        for v, k in deg.items():
            if k <= 2:
                alive.discard(v)
                changed = True
    core = tuple(sorted(alive))
    rattlers = tuple(v for v in range(p.n) if v not in alive)
    if not core:
        return SpineReport(core, rattlers, False)
    rep = analyze(subpacking(p, core), tol)
    return SpineReport(core, rattlers, rep.collectively_jammed, rep)


# -- run pools -------------------------------------------------------------------------


@dataclass
class RunRecord:
    seed: int
    density: float
    radius: float
    jammed: bool
    converged: bool
    snapped: bool
    packing: TorusPacking = field(repr=False)

    def manifest_entry(self) -> dict:
        return {"seed": self.seed, "density": self.density, "radius": self.radius,
                "jammed": self.jammed, "converged": self.converged, "snapped": self.snapped}


def single_run(n: int, l: Lattice2, seed: int, cfg: OptimizerConfig) -> RunRecord:
    res = improve(random_packing(n, l, seed), cfg)
    p = res.packing
    sp = spine(p)
    # a converged run with a nonempty spine that is not jammed is flagged
    ok = res.converged and not res.degenerate and (not sp.spine or sp.spine_jammed)
    return RunRecord(seed, density(p, check=False), float(p.radius), sp.spine_jammed, ok,
                     res.snapped, p)


def thread_count() -> int:
    env = os.environ.get("TORUSPACK_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def run_pool(n: int, l: Lattice2, seeds, cfg: OptimizerConfig = OptimizerConfig(),
             threads: int | None = None) -> list[RunRecord]:
    """One improve run per seed, fanned out over a thread pool; ordered by seed."""
    seeds = list(seeds)
    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        return list(pool.map(lambda s: single_run(n, l, s, cfg), seeds))


def best_run(records: list[RunRecord]) -> RunRecord:
    return max(records, key=lambda r: (r.density, -r.seed))


def triangular_torus() -> Lattice2:
    return Lattice2((QuadExt(1), QuadExt(0)), lat.vec(Fraction(1, 2), QuadExt(0, Fraction(1, 2))))


def square_torus() -> Lattice2:
    return Lattice2((QuadExt(1), QuadExt(0)), (QuadExt(0), QuadExt(1)))


DELTA = math.pi / math.sqrt(12)
