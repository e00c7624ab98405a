"""Face-complete edge-to-edge tilings of flat tori by unit-edge polygons.

A tiling stores its vertices as lifts to the plane, a table of unit edge
directions, and each face as a start vertex plus the cyclic list of edge
directions walked counterclockwise around it.  Faces determine edges; edges
carry the integer wrap that closes them on the torus.

Cyclotomic tilings (every edge a power of g = exp(i pi/6)) additionally keep
exact Z[g] lifts of every vertex, which is what the rotation flex acts on.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .. import lattice as lat
from ..cyclotomic import CycloInt, QuadExt, cyclo_power
from ..errors import MalformedTilingError
from ..lattice import Lattice2

CYCLO_DIRECTIONS = tuple(cyclo_power(k).re_im() for k in range(12))
CYCLO_OPPOSITE = tuple((k + 6) % 12 for k in range(12))


def _key(l: Lattice2, pt) -> tuple:
    u, v = l.coords(pt)
    return (u - u.floor(), v - v.floor())


def _wrap(l: Lattice2, vec) -> tuple[int, int]:
    u, v = l.coords(vec)
    if u.b or v.b or u.a.denominator != 1 or v.a.denominator != 1:
        raise MalformedTilingError("edge does not close up modulo the period lattice")
    return (int(u.a), int(v.a))


def line_key(v) -> tuple:
    """Direction of the undirected line through a unit vector."""
    x, y = v
    if y.sign() < 0 or (y == 0 and x.sign() < 0):
        return (-x, -y)
    return (x, y)


@dataclass(frozen=True, eq=False)
class Tiling:
    lattice: Lattice2
    points: tuple
    directions: tuple
    opposite: tuple
    faces: tuple  # ((start, (d0, d1, ...)), ...)
    cyclo: tuple | None = None
    step: dict = field(repr=False, default=None)  # (i, d) -> (j, wrap)

    # -- construction -----------------------------------------------------------

    @classmethod
    def build(cls, l: Lattice2, faces, directions=CYCLO_DIRECTIONS, opposite=CYCLO_OPPOSITE,
              vertices=None, cyclotomic: bool = False) -> "Tiling":
        """Assemble a tiling from faces given as (start lift, direction indices).

        Start lifts are exact planar vectors, or CycloInt values for cyclotomic
        tilings.  ``vertices`` fixes the vertex order; otherwise vertices are
        numbered by first appearance.
        """
        keys: dict = {}
        points: list = []
        lifts: list = []

        def as_vec(p):
            return p.re_im() if isinstance(p, CycloInt) else lat.vec(*p)

        def index(p):
            k = _key(l, as_vec(p))
            if k not in keys:
                if vertices is not None:
                    raise MalformedTilingError("face vertex missing from the given vertex list")
                keys[k] = len(points)
                points.append(as_vec(p))
                lifts.append(p)
            return keys[k]

        if vertices is not None:
            for p in vertices:
                k = _key(l, as_vec(p))
                if k in keys:
                    raise MalformedTilingError("duplicate vertex modulo the lattice")
                keys[k] = len(points)
                points.append(as_vec(p))
                lifts.append(p)
        if cyclotomic:
            step_vec = [cyclo_power(k) for k in range(12)]
        out_faces = []
        for start, dirs in faces:
            i0 = index(start)
            p = start
            for d in dirs:
                p = p + step_vec[d] if cyclotomic else lat.add(lat.vec(*p), directions[d])
                index(p)
            out_faces.append((i0, tuple(dirs)))
        cyc = tuple(lifts) if cyclotomic else None
        t = cls(l, tuple(points), tuple(directions), tuple(opposite), tuple(out_faces), cyc)
        t._link()
        return t

    def _link(self) -> None:
        step = {}
        for f, (start, dirs) in enumerate(self.faces):
            i = start
            total = (QuadExt(0), QuadExt(0))
            for d in dirs:
                tgt = lat.add(self.points[i], self.directions[d])
                j = self.locate(tgt)
                w = _wrap(self.lattice, lat.sub(tgt, self.points[j]))
                if (i, d) in step:
                    raise MalformedTilingError(f"directed edge ({i}, {d}) used by two faces")
                step[(i, d)] = (j, w)
                total = lat.add(total, self.directions[d])
                i = j
            if total[0] != 0 or total[1] != 0:
                raise MalformedTilingError(f"face {f} does not close")
        for (i, d), (j, w) in step.items():
            back = step.get((j, self.opposite[d]))
            if back is None or back[0] != i:
                raise MalformedTilingError(f"edge ({i}, {d}) borders only one face")
        object.__setattr__(self, "step", step)

    def locate(self, pt) -> int:
        try:
            return self._index[_key(self.lattice, pt)]
        except KeyError:
            raise MalformedTilingError("point is not a vertex of the tiling") from None

    @cached_property
    def _index(self) -> dict:
        return {_key(self.lattice, p): i for i, p in enumerate(self.points)}

    # -- basic structure --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def is_cyclotomic(self) -> bool:
        return self.cyclo is not None

    @cached_property
    def edges(self) -> tuple:
        """Undirected edges (i, j, d, wrap), one per pair of opposite directed edges."""
        out = []
        for (i, d), (j, w) in self.step.items():
            if d < self.opposite[d]:
                out.append((i, j, d, w))
        return tuple(sorted(out))

    def face_walk(self, f: int) -> list[tuple[int, int]]:
        """[(vertex, outgoing direction), ...] around face f."""
        start, dirs = self.faces[f]
        out = []
        i = start
        for d in dirs:
            out.append((i, d))
            i = self.step[(i, d)][0]
        return out

    def face_vertices(self, f: int) -> list[int]:
        return [i for i, _ in self.face_walk(f)]

    def face_area(self, f: int):
        start, dirs = self.faces[f]
        p = (QuadExt(0), QuadExt(0))
        area = QuadExt(0)
        for d in dirs:
            q = lat.add(p, self.directions[d])
            area = area + lat.cross(p, q)
            p = q
        return area / 2

    @cached_property
    def face_of(self) -> dict:
        """(vertex, direction) of a directed edge -> face on its left."""
        return {(i, d): f for f in range(len(self.faces)) for i, d in self.face_walk(f)}

    def degree(self, i: int) -> int:
        return sum(1 for (v, _) in self.step if v == i)

    @cached_property
    def degrees(self) -> tuple:
        c = Counter(v for v, _ in self.step)
        return tuple(c[i] for i in range(self.n))

    def face_sizes(self) -> list[int]:
        return [len(d) for _, d in self.faces]

    def check_area(self) -> None:
        total = sum((self.face_area(f) for f in range(len(self.faces))), QuadExt(0))
        if total != lat.area(self.lattice):
            raise MalformedTilingError(f"faces cover area {total}, torus has {lat.area(self.lattice)}")
        for f in range(len(self.faces)):
            if self.face_area(f).sign() <= 0:
                raise MalformedTilingError(f"face {f} is not counterclockwise")

    def edge_lines(self) -> set:
        return {line_key(self.directions[d]) for (_, d) in self.step}

    def float_points(self):
        return [lat.to_float(p) for p in self.points]

    def to_packing(self):
        from ..packing import TorusPacking

        return TorusPacking(self.lattice, tuple(self.lattice.coords(p) for p in self.points),
                            Fraction(1, 2))


# -- statistics ---------------------------------------------------------------------


@dataclass(frozen=True)
class TilingStats:
    v: int
    e: int
    f: int
    v_counts: dict
    f_counts: dict
    v_bar: Fraction
    f_bar: Fraction


def stats(t: Tiling) -> TilingStats:
    from ..errors import TheoremViolation

    v, f = t.n, len(t.faces)
    e = len(t.edges)
    vc = Counter(t.degrees)
    fc = Counter(t.face_sizes())
    v_bar = Fraction(sum(k * c for k, c in vc.items()), v)
    f_bar = Fraction(sum(k * c for k, c in fc.items()), f)
    if v * v_bar != 2 * e or f * f_bar != 2 * e:
        raise MalformedTilingError("incidence counts disagree")
    if 1 / v_bar + 1 / f_bar != Fraction(1, 2):
        raise TheoremViolation(f"Euler relation fails: 1/{v_bar} + 1/{f_bar} != 1/2")
    return TilingStats(v, e, f, dict(vc), dict(fc), v_bar, f_bar)


# -- edge classes (cyclotomic) ---------------------------------------------------------


def classify_edges(t: Tiling) -> dict:
    """Split edges into the even-power class and the odd-power class."""
    if not t.is_cyclotomic:
        raise MalformedTilingError("edge directions are not powers of g")
    classes = {1: [], 2: []}
    for edge in t.edges:
        classes[1 if edge[2] % 2 == 0 else 2].append(edge)
    for f, (_, dirs) in enumerate(t.faces):
        if len(dirs) == 3 and len({d % 2 for d in dirs}) != 1:
            raise MalformedTilingError(f"triangle {f} mixes edge classes")
    for a, b in triangle_adjacency(t):
        if t.faces[a][1][0] % 2 != t.faces[b][1][0] % 2:
            raise MalformedTilingError("edge-adjacent triangles in different classes")
    return classes


def triangle_adjacency(t: Tiling) -> list[tuple[int, int]]:
    pairs = []
    fo = t.face_of
    for (i, d), f in fo.items():
        j, _ = t.step[(i, d)]
        g = fo[(j, t.opposite[d])]
        if f < g and len(t.faces[f][1]) == 3 and len(t.faces[g][1]) == 3:
            pairs.append((f, g))
    return pairs


# -- strips and tours ---------------------------------------------------------------


@dataclass(frozen=True)
class Strip:
    faces: tuple
    line: tuple  # direction of the shared (pass-through) edges


def _next_quad(t: Tiling, f: int, pos: int):
    """Cross the edge opposite position ``pos`` of quad f; None if a non-quad is hit."""
    i, d = t.face_walk(f)[(pos + 2) % 4]
    j, _ = t.step[(i, d)]
    g = t.face_of[(j, t.opposite[d])]
    if len(t.faces[g][1]) != 4:
        return None
    return g, t.face_walk(g).index((j, t.opposite[d]))


def detect_strips(t: Tiling) -> list[Strip]:
    """Closed cyclic chains of quadrilaterals glued along parallel opposite edges."""
    seen = set()
    strips = []
    for f0, (_, dirs) in enumerate(t.faces):
        if len(dirs) != 4:
            continue
        for pair in (0, 1):
            if (f0, pair) in seen:
                continue
            chain = [f0]
            seen.add((f0, pair))
            state = (f0, pair)
            closed = False
            while (state := _next_quad(t, *state)) is not None:
                if (state[0], state[1] % 2) == (f0, pair):
                    closed = True
                    break
                seen.add((state[0], state[1] % 2))
                chain.append(state[0])
            if closed:
                strips.append(Strip(tuple(chain), line_key(t.directions[dirs[pair]])))
    return strips


def tour(t: Tiling, direction: int, start: int = 0) -> list[int]:
    """Vertices visited by repeatedly stepping along ``direction`` from ``start``."""
    if any(len(d) != 4 for _, d in t.faces):
        raise MalformedTilingError("tours are defined for all-rhombus tilings")
    if len(t.edge_lines()) != 2:
        raise MalformedTilingError("all-rhombus tiling must use exactly two edge directions")
    cycle = [start]
    i = start
    while True:
        if (i, direction) not in t.step:
            raise MalformedTilingError(f"vertex {i} has no edge in direction {direction}")
        i = t.step[(i, direction)][0]
        if i == start:
            return cycle
        cycle.append(i)


def tour_directions(t: Tiling) -> list[int]:
    """One direction index per edge line, in a fixed order (real axis first)."""
    out = {}
    for (_, d) in sorted(t.step):
        key = line_key(t.directions[d])
        if key not in out and t.directions[d] == key:
            out[key] = d
    return [out[k] for k in sorted(out, key=lambda v: (float(v[1]), -float(v[0])))]


def all_vertices_tour(t: Tiling) -> bool:
    return all(len(tour(t, d)) == t.n for d in tour_directions(t))
