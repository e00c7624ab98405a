"""Concrete tilings: triangle lattices, the dodecagonal square-triangle tiling,
the snub square tiling, rhombus grids and triangle-rhombus strip tilings."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .. import lattice as lat
from ..cyclotomic import CycloInt, QuadExt, cyclo_mul, cyclo_power
from ..errors import MalformedTilingError
from ..lattice import Lattice2, triangular_lattice
from .core import CYCLO_DIRECTIONS, Tiling, _key

HALF = Fraction(1, 2)
G_DELTA_VEC = (QuadExt(HALF), QuadExt(0, HALF))
G_DELTA2_VEC = (QuadExt(-HALF), QuadExt(0, HALF))


def _unique_faces(l: Lattice2, faces) -> list:
    """Drop faces that coincide modulo the lattice (same vertex classes and directions)."""
    seen = set()
    out = []
    for start, dirs in faces:
        p = start
        sig = []
        for d in dirs:
            vec = p.re_im() if isinstance(p, CycloInt) else p
            sig.append((_key(l, vec), d))
            p = p + cyclo_power(d) if isinstance(p, CycloInt) else lat.add(p, CYCLO_DIRECTIONS[d])
        key = frozenset(sig)
        if key not in seen:
            seen.add(key)
            out.append((start, dirs))
    return out


def triangle_tiling(n1: int, n2: int) -> Tiling:
    """Equilateral triangle tiling of the torus C / Lambda(z, g_delta z), z = n1 + n2 g_delta."""
    z = CycloInt(n1, 0, n2, 0)
    l = triangular_lattice(z)
    n = n1 * n1 + n1 * n2 + n2 * n2
    if n == 0:
        raise ValueError("(n1, n2) must be nonzero")
    faces = []
    for i in range(n):
        for j in range(n):
            p = CycloInt(i, 0, j, 0)
            faces.append((p, (0, 4, 8)))
            faces.append((p, (2, 6, 10)))
    return Tiling.build(l, _unique_faces(l, faces), cyclotomic=True)


def dodecagonal_square_triangle_tiling() -> Tiling:
    """Square-triangle tiling with 13 vertices per period and no strips.

    Each dodecagon of the 3.12.12 tiling is dissected into a central hexagon of
    six triangles, a ring of six squares and six triangles; the period lattice
    is Lambda(z, g_delta z) with z = (1 + g)^2.
    """
    z = CycloInt(1, 2, 1, 0)
    l = triangular_lattice(z)
    origin = CycloInt(0, 0, 0, 0)
    v = [cyclo_power(2 * k) for k in range(7)]
    faces = []
    for k in range(6):
        e = 2 * k
        faces.append((origin, (e % 12, (e + 4) % 12, (e + 8) % 12)))
        faces.append((v[k + 1], ((e + 10) % 12, (e + 1) % 12, (e + 4) % 12, (e + 7) % 12)))
        faces.append((v[k + 1], ((e + 1) % 12, (e + 5) % 12, (e + 9) % 12)))
        q = v[k + 1] + cyclo_power(e + 3)
        faces.append((q, ((e + 11) % 12, (e + 3) % 12, (e + 7) % 12)))
    return Tiling.build(l, _unique_faces(l, faces), cyclotomic=True)


def snub_square_tiling() -> Tiling:
    """The 3.3.4.3.4 tiling on the square torus of side 1 + sqrt 3.

    Every vertex carries the same star (square, triangle, square, triangle,
    triangle) turned by some number q of quarter turns.  Moving to the next
    corner of either square of a star raises q by one, so the stars are
    generated by a search over (vertex class, q).  The period generators are
    z = g (1 + sqrt 3) = 1 + g + g^2 and g^3 z.
    """
    z = CycloInt(1, 1, 1, 0)
    l = Lattice2.from_cyclo(z, cyclo_mul(cyclo_power(3), z))
    star = ((0, 3, 6, 9), (3, 7, 11), (5, 8, 11, 2), (8, 0, 4), (10, 2, 6))
    faces = []
    seen = set()
    todo = [(CycloInt(0, 0, 0, 0), 0)]
    while todo:
        v, q = todo.pop()
        state = (_key(l, v.re_im()), q)
        if state in seen:
            continue
        seen.add(state)
        faces.extend((v, tuple((d + 3 * q) % 12 for d in dirs)) for dirs in star)
        for d in (3 * q, 5 + 3 * q):
            todo.append((v + cyclo_power(d), (q + 1) % 4))
    return Tiling.build(l, _unique_faces(l, faces), cyclotomic=True)


# -- rhombus and strip tilings ----------------------------------------------------


def unit_vector(g) -> tuple:
    """Exact unit vector from a pair (re, im); complex input is rejected."""
    if isinstance(g, complex):
        raise TypeError("give g exactly as a pair (re, im)")
    x, y = lat.vec(*g)
    if not lat.is_exact(x) or not lat.is_exact(y):
        raise TypeError("g must have exact coordinates")
    if x * x + y * y != 1:
        raise ValueError(f"g = ({x}, {y}) is not a unit vector")
    return (x, y)


def _check_rhombus_direction(g) -> tuple:
    x, y = unit_vector(g)
    if y.sign() <= 0:
        raise ValueError("g must have positive imaginary part")
    if abs(2 * x) >= 1:
        raise ValueError("rhombus angle must lie strictly between pi/3 and 2pi/3")
    return (x, y)


def rhombus_grid_tiling(p: int, q: int, s: int, g) -> Tiling:
    """All-rhombus tiling of C / Lambda(p, q g + s) by p q translates of the
    rhombus spanned by 1 and g."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    gx, gy = _check_rhombus_direction(g)
    one = (QuadExt(1), QuadExt(0))
    gv = (gx, gy)
    dirs = (one, gv, lat.scale(-1, one), lat.scale(-1, gv))
    l = Lattice2((QuadExt(p), QuadExt(0)), lat.add(lat.scale(q, gv), (QuadExt(s), QuadExt(0))))
    faces = [(lat.add((QuadExt(i), QuadExt(0)), lat.scale(j, gv)), (0, 1, 2, 3))
             for j in range(q) for i in range(p)]
    verts = [f[0] for f in faces]
    return Tiling.build(l, faces, dirs, (2, 3, 0, 1), vertices=verts)


def rhombus_grid_tour_lengths(p: int, q: int, s: int) -> tuple[int, int]:
    """Closed-form tour lengths along 1 and along g for :func:`rhombus_grid_tiling`."""
    return p, q * p // gcd(s, p)


def build_strip_tiling(a: int, b: int, c: int, g):
    """Strip tiling of c rhombi and a layers of triangles on C / Lambda(c, g + a g_delta + b).

    Returns ``(tiling, packing)``; vertices are listed row by row, row 0 being
    the bottom of the rhombus strip.
    """
    if a < 0 or c < 1:
        raise ValueError("need a >= 0 and c >= 1")
    gv = _check_rhombus_direction(g)
    one = (QuadExt(1), QuadExt(0))
    base = (one, gv, G_DELTA_VEC, G_DELTA2_VEC)
    dirs = base + tuple(lat.scale(-1, d) for d in base)
    opposite = tuple((k + 4) % 8 for k in range(8))
    h = lat.add(lat.add(gv, lat.scale(a, G_DELTA_VEC)), (QuadExt(b), QuadExt(0)))
    l = Lattice2((QuadExt(c), QuadExt(0)), h)
    rows = []
    for r in range(a + 1):
        shift = (QuadExt(0), QuadExt(0)) if r == 0 else lat.add(gv, lat.scale(r - 1, G_DELTA_VEC))
        rows.append([lat.add((QuadExt(k), QuadExt(0)), shift) for k in range(c)])
    faces = [(rows[0][k], (0, 1, 4, 5)) for k in range(c)]
    for r in range(1, a + 1):
        for x in rows[r]:
            faces.append((x, (0, 3, 6)))
            faces.append((lat.add(x, one), (2, 4, 7)))
    verts = [x for row in rows for x in row]
    t = Tiling.build(l, faces, dirs, opposite, vertices=verts)
    return t, t.to_packing()


def strip_on_triangular_torus(a: int, b: int, c: int, bound: int = 32):
    """Integers (n1, n2, n3, n4) and a rhombus direction g placing the (a, b, c)
    strip tiling on a triangular torus, or None.

    With N = n1^2 + n1 n2 + n2^2, Im g = (c/N - a) sqrt(3)/2 is forced; each
    admissible choice of Re g then fixes n3 + n4 g_delta = (g + a g_delta + b)(n1 + n2 g_delta)/c,
    which must be integral with n1 n4 - n2 n3 = 1.
    """
    if a < 0 or c < 1:
        raise ValueError("need a >= 0 and c >= 1")
    pairs = [(n1, n2) for n1 in range(-bound, bound + 1) for n2 in range(-bound, bound + 1)
             if (n1, n2) != (0, 0)]
    pairs.sort(key=lambda p: (p[0] ** 2 + p[0] * p[1] + p[1] ** 2, min(p) < 0, -p[0], -p[1]))
    for n1, n2 in pairs:
        N = n1 * n1 + n1 * n2 + n2 * n2
        t = Fraction(c, N) - a
        if t <= 0:
            continue
        im = QuadExt(0, t / 2)
        re2 = 1 - im * im
        if re2.sign() < 0:
            continue
        re = re2.sqrt()
        if re is None:
            continue
        for x in (re, -re) if re else (re,):
            if 2 * abs(x) >= 1:
                continue
            # w = (g + a g_delta + b)(n1 + n2 g_delta) / c, in exact coordinates
            hx = x + QuadExt(Fraction(a, 2) + b)
            hy = im + QuadExt(0, Fraction(a, 2))
            mx = QuadExt(n1 + Fraction(n2, 2))
            my = QuadExt(0, Fraction(n2, 2))
            wx = (hx * mx - hy * my) / c
            wy = (hx * my + hy * mx) / c
            n4q = wy / QuadExt(0, HALF)
            n3q = wx - n4q / 2
            if n4q.b or n3q.b or n4q.a.denominator != 1 or n3q.a.denominator != 1:
                continue
            n3, n4 = int(n3q.a), int(n4q.a)
            if n1 * n4 - n2 * n3 != 1 or max(abs(n3), abs(n4)) > bound:
                continue
            return (n1, n2, n3, n4), (x, im)
    return None


def strip_torus_lattice(n1: int, n2: int, a: int, c: int, g) -> Lattice2:
    """Lambda(v, g_delta v) with v = c / (n1 + n2 g_delta), in exact coordinates."""
    N = n1 * n1 + n1 * n2 + n2 * n2
    # c (n1 + n2 g_delta^-1) / N, g_delta^-1 = 1/2 - (sqrt 3 / 2) i
    vx = QuadExt(Fraction(c, N) * (n1 + Fraction(n2, 2)))
    vy = QuadExt(0, -Fraction(c * n2, 2 * N))
    v = (vx, vy)
    gv = (vx / 2 - vy * QuadExt(0, HALF), vx * QuadExt(0, HALF) + vy / 2)
    return Lattice2(v, gv)


def require_exact_lattice_match(l1: Lattice2, l2: Lattice2) -> None:
    """Raise unless the two lattices coincide."""
    for g in (l1.g1, l1.g2):
        u, v = l2.coords(g)
        if u.b or v.b or u.a.denominator != 1 or v.a.denominator != 1:
            raise MalformedTilingError("lattices differ")
    if lat.area(l1) != lat.area(l2):
        raise MalformedTilingError("lattices differ")
