"""The two-class rotation flex of cyclotomic tilings, completion, and the
hypothesis check for triangle-rhombus tilings.

Every lift z = c0 + c1 g + c2 g^2 + c3 g^3 splits uniquely as
lambda1 + lambda2 with lambda1 = c0 + c2 g^2 (even powers) and
lambda2 = c1 g + c3 g^3 (odd powers).  The flex by theta sends z to
lambda1 + lambda2 exp(i theta): even-power edges stay put, odd-power edges
rotate counterclockwise by theta.  It is Z-linear, so period vectors flex the
same way and every edge stays a unit vector.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .. import lattice as lat
from ..cyclotomic import CycloInt, cyclo_mul, cyclo_power, power_index
from ..errors import MalformedTilingError, StripsPresentError
from ..lattice import Lattice2, classify_shape
from .core import Tiling, detect_strips, line_key


def _split_complex(z: CycloInt, theta: float) -> complex:
    return complex(z.lambda1()) + complex(z.lambda2()) * cmath.exp(1j * theta)


def _require_flexible(t: Tiling) -> None:
    if not t.is_cyclotomic or t.lattice.cyclo is None:
        raise MalformedTilingError("the rotation flex needs a cyclotomic tiling")
    if detect_strips(t):
        raise StripsPresentError("tiling has strips; the rotation flex is not its only motion")
    if not _connected(t):
        raise MalformedTilingError("tiling graph is disconnected")


def _connected(t: Tiling) -> bool:
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for (v, _), (j, _) in t.step.items():
            if v == i and j not in seen:
                seen.add(j)
                todo.append(j)
    return len(seen) == t.n


@dataclass(frozen=True)
class FlexedConfiguration:
    theta: float
    points: np.ndarray  # n x 2
    g1: complex
    g2: complex

    def edge_lengths(self, t: Tiling) -> np.ndarray:
        out = []
        for i, j, _, (w1, w2) in t.edges:
            pi = complex(*self.points[i])
            pj = complex(*self.points[j]) + w1 * self.g1 + w2 * self.g2
            out.append(abs(pj - pi))
        return np.array(out)


def flex(t: Tiling, theta: float) -> FlexedConfiguration:
    _require_flexible(t)
    pts = np.array([[z.real, z.imag] for z in (_split_complex(c, theta) for c in t.cyclo)])
    z1, z2 = t.lattice.cyclo
    return FlexedConfiguration(theta, pts, _split_complex(z1, theta), _split_complex(z2, theta))


@dataclass(frozen=True)
class FlexedLattice:
    lattice: Lattice2
    shape: str
    area: float
    lengths: tuple[float, float]
    cos_angle: float


def flexed_lattice(t: Tiling, theta: float) -> FlexedLattice:
    _require_flexible(t)
    z1, z2 = t.lattice.cyclo
    a, b = _split_complex(z1, theta), _split_complex(z2, theta)
    l = Lattice2.from_complex(a, b)
    cos = (a.real * b.real + a.imag * b.imag) / (abs(a) * abs(b))
    return FlexedLattice(l, classify_shape(l).tag, float(lat.area(l)), (abs(a), abs(b)), cos)


def rotate_odd(z: CycloInt, steps: int) -> CycloInt:
    """lambda1 + lambda2 g^steps, the flex by steps * pi/6 inside Z[g]."""
    return z.lambda1() + cyclo_mul(z.lambda2(), cyclo_power(steps))


def flex_exact(t: Tiling, steps: int) -> Tiling:
    """Flex by theta = steps * pi/6, staying in Z[g].

    Quadrilaterals that collapse (both edge pairs parallel) are removed and
    their coincident vertices merge.
    """
    _require_flexible(t)
    z1, z2 = t.lattice.cyclo
    new_lattice = Lattice2.from_cyclo(rotate_odd(z1, steps), rotate_odd(z2, steps))
    faces = []
    for start, dirs in t.faces:
        nd = tuple(d if d % 2 == 0 else (d + steps) % 12 for d in dirs)
        if len(nd) == 4 and (nd[1] - nd[0]) % 6 == 0:
            continue
        faces.append((rotate_odd(t.cyclo[start], steps), nd))
    return Tiling.build(new_lattice, faces, cyclotomic=True)


def quad_angles(t: Tiling, theta: float) -> list[float]:
    """Smallest interior angle of every quadrilateral after flexing by theta."""
    out = []
    for _, dirs in t.faces:
        if len(dirs) != 4:
            continue
        u = cmath.exp(1j * math.pi * dirs[0] / 6) * (cmath.exp(1j * theta) if dirs[0] % 2 else 1)
        v = cmath.exp(1j * math.pi * dirs[1] / 6) * (cmath.exp(1j * theta) if dirs[1] % 2 else 1)
        ang = math.acos(max(-1.0, min(1.0, (u.conjugate() * v).real)))
        out.append(min(ang, math.pi - ang))
    return out


def complete(t: Tiling) -> Tiling:
    """Split every rhombus with interior angles pi/3, 2pi/3 into two triangles."""
    if not t.is_cyclotomic:
        return t
    faces = []
    changed = False
    for f, (start, dirs) in enumerate(t.faces):
        if len(dirs) == 4 and (dirs[1] - dirs[0]) % 12 in (2, 4, 8, 10):
            walk = t.face_walk(f)
            lifts = [t.cyclo[start]]
            for _, d in walk[:-1]:
                lifts.append(lifts[-1] + cyclo_power(d))
            d0, d1, d2, d3 = dirs
            if (d1 - d0) % 12 == 2:  # obtuse corner at vertex 1: cut 1 -> 3
                diag = power_index(cyclo_power(d1) + cyclo_power(d2))
                faces.append((lifts[1], (d1, d2, (diag + 6) % 12)))
                faces.append((lifts[3], (d3, d0, diag)))
            else:  # obtuse corners at 0 and 2: cut 0 -> 2
                diag = power_index(cyclo_power(d0) + cyclo_power(d1))
                faces.append((lifts[0], (d0, d1, (diag + 6) % 12)))
                faces.append((lifts[2], (d2, d3, diag)))
            if diag is None:  # pragma: no cover
                raise MalformedTilingError("rhombus diagonal is not a unit vector")
            changed = True
        else:
            faces.append((t.cyclo[start], dirs))
    if not changed:
        return t
    return Tiling.build(t.lattice, faces, vertices=t.cyclo, cyclotomic=True)


@dataclass(frozen=True)
class Theorem31Report:
    degree_ok: bool
    bad_vertices: tuple
    strips: int
    rhombi_congruent: bool
    direction_sets: int
    components: tuple  # (faces, line set) per edge-connected triangle cluster
    hypotheses_hold: bool
    conclusion_holds: bool


def _triangle_components(t: Tiling) -> list[list[int]]:
    from .core import triangle_adjacency

    tris = [f for f, (_, d) in enumerate(t.faces) if len(d) == 3]
    parent = {f: f for f in tris}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in triangle_adjacency(t):
        parent[find(a)] = find(b)
    groups: dict = {}
    for f in tris:
        groups.setdefault(find(f), []).append(f)
    return sorted(groups.values())


def check_theorem31_hypotheses(t: Tiling) -> Theorem31Report:
    """Degree-5/6 condition at triangle vertices, no strips, and the conclusion's
    signature (congruent rhombi, triangle edges in at most two direction sets)."""
    tri_vertices = {i for f, (_, d) in enumerate(t.faces) if len(d) == 3 for i in t.face_vertices(f)}
    bad = tuple(sorted(i for i in tri_vertices if t.degrees[i] not in (5, 6)))
    strips = detect_strips(t)
    shapes = set()
    for _, dirs in t.faces:
        if len(dirs) == 4:
            shapes.add(abs(lat.dot(t.directions[dirs[0]], t.directions[dirs[1]])))
    comps = []
    line_sets = set()
    for comp in _triangle_components(t):
        lines = frozenset(line_key(t.directions[d]) for f in comp for d in t.faces[f][1])
        line_sets.add(lines)
        comps.append((tuple(comp), lines))
    hyp = not bad and not strips
    return Theorem31Report(
        degree_ok=not bad,
        bad_vertices=bad,
        strips=len(strips),
        rhombi_congruent=len(shapes) <= 1,
        direction_sets=len(line_sets),
        components=tuple(comps),
        hypotheses_hold=hyp,
        conclusion_holds=len(shapes) <= 1 and len(line_sets) <= 2,
    )
