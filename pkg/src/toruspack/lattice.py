"""Rank-2 period lattices in the plane: areas, reduction, shape, indices.

Vectors are ``(x, y)`` tuples whose entries are either exact
:class:`~toruspack.cyclotomic.QuadExt` values or floats.  Exact inputs are
handled with exact comparisons throughout; float inputs use a relative
tolerance of ``FLOAT_TOL``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .cyclotomic import CycloInt, QuadExt, cyclo_mul, G_DELTA
from .errors import ConsistencyError, ContainmentError, DegenerateLatticeError

FLOAT_TOL = 1e-9

TRIANGULAR = "triangular"
SQUARE = "square"
GENERIC = "generic"


def scalar(x):
    """Normalize a coordinate: exact rationals become QuadExt, floats stay floats."""
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadExt(x)
    if isinstance(x, float):
        return x
    raise TypeError(f"unsupported scalar {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (QuadExt, int, Fraction))


def vec(x, y) -> tuple:
    return (scalar(x), scalar(y))


def add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def scale(s, u):
    return (s * u[0], s * u[1])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def to_float(u) -> tuple[float, float]:
    return (float(u[0]), float(u[1]))


def _sign(x, ref: float = 1.0) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    if abs(x) <= FLOAT_TOL * ref:
        return 0
    return 1 if x > 0 else -1


def _round(x) -> int:
    if isinstance(x, QuadExt):
        return x.round()
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class Lattice2:
    g1: tuple
    g2: tuple
    cyclo: tuple[CycloInt, CycloInt] | None = None

    def __post_init__(self):
        object.__setattr__(self, "g1", vec(*self.g1))
        object.__setattr__(self, "g2", vec(*self.g2))
        if area_signed(self) == 0 or (not self.exact and abs(area_signed(self)) < 1e-300):
            raise DegenerateLatticeError("lattice generators are linearly dependent")

    @classmethod
    def from_cyclo(cls, z1: CycloInt, z2: CycloInt) -> "Lattice2":
        return cls(z1.re_im(), z2.re_im(), (z1, z2))

    @classmethod
    def from_complex(cls, z1: complex, z2: complex) -> "Lattice2":
        return cls((z1.real, z1.imag), (z2.real, z2.imag))

    @property
    def exact(self) -> bool:
        return all(isinstance(c, QuadExt) for c in (*self.g1, *self.g2))

    def basis(self) -> tuple[tuple, tuple]:
        return self.g1, self.g2

    def point(self, coords) -> tuple:
        """Cartesian point u*g1 + v*g2."""
        u, v = coords
        if isinstance(u, float) or isinstance(v, float):
            return add(scale(u, to_float(self.g1)), scale(v, to_float(self.g2)))
        return add(scale(u, self.g1), scale(v, self.g2))

    def coords(self, p) -> tuple:
        """Lattice coordinates (u, v) of a Cartesian point."""
        if isinstance(p[0], float) or isinstance(p[1], float):
            g1, g2 = to_float(self.g1), to_float(self.g2)
            det = cross(g1, g2)
            return (cross(p, g2) / det, cross(g1, p) / det)
        (a1, a2), (b1, b2) = self._dual
        return (p[0] * a1 + p[1] * a2, p[0] * b1 + p[1] * b2)

    @cached_property
    def _dual(self) -> tuple:
        """Rows of the inverse basis matrix, computed once per exact lattice."""
        det = cross(self.g1, self.g2)
        inv = QuadExt(1) / det
        return ((self.g2[1] * inv, -self.g2[0] * inv), (-self.g1[1] * inv, self.g1[0] * inv))

    def float_matrix(self):
        import numpy as np

        return np.array([to_float(self.g1), to_float(self.g2)])


def area_signed(l: Lattice2):
    return cross(l.g1, l.g2)


def area(l: Lattice2):
    a = area_signed(l)
    return abs(a)


def reduce_with_transform(l: Lattice2) -> tuple[Lattice2, tuple[tuple[int, int], tuple[int, int]]]:
    """Lagrange-Gauss reduction.

    Returns the reduced lattice and the unimodular integer matrix ``U`` with
    rows expressing the new generators in the old basis.
    """
    b1, b2 = l.g1, l.g2
    u1, u2 = (1, 0), (0, 1)
    n1, n2 = dot(b1, b1), dot(b2, b2)
    if _sign(n2 - n1, float(n1)) < 0:
        b1, b2, u1, u2, n1, n2 = b2, b1, u2, u1, n2, n1
    for _ in range(10_000):
        mu = _round(dot(b1, b2) / n1)
        if mu:
            b2 = sub(b2, scale(mu, b1))
            u2 = (u2[0] - mu * u1[0], u2[1] - mu * u1[1])
            n2 = dot(b2, b2)
        if _sign(n2 - n1, float(n1)) >= 0:
            break
        b1, b2, u1, u2, n1, n2 = b2, b1, u2, u1, n2, n1
    else:  # pragma: no cover
        raise RuntimeError("Gauss reduction did not terminate")
    # orient so that the angle lies in [pi/3, pi/2] when possible
    if _sign(dot(b1, b2), float(n1)) < 0:
        b2 = scale(-1, b2)
        u2 = (-u2[0], -u2[1])
    cyc = None
    if l.cyclo is not None:
        z1, z2 = l.cyclo
        cyc = (z1 * u1[0] + z2 * u1[1], z1 * u2[0] + z2 * u2[1])
    return Lattice2(b1, b2, cyc), (u1, u2)


def reduce(l: Lattice2) -> Lattice2:
    return reduce_with_transform(l)[0]


@dataclass(frozen=True)
class LatticeShape:
    tag: str
    basis: tuple[tuple, tuple]


def classify_shape(l: Lattice2) -> LatticeShape:
    r = reduce(l)
    n1, n2 = dot(r.g1, r.g1), dot(r.g2, r.g2)
    d = dot(r.g1, r.g2)
    ref = float(n1)
    if r.exact:
        equal = n1 == n2
        tri = equal and 2 * abs(d) == n1
        sq = equal and d == 0
    else:
        equal = abs(float(n1) - float(n2)) / ref <= FLOAT_TOL
        cos = float(d) / math.sqrt(float(n1) * float(n2))
        tri = equal and abs(abs(cos) - 0.5) <= FLOAT_TOL
        sq = equal and abs(cos) <= FLOAT_TOL
    tag = TRIANGULAR if tri else SQUARE if sq else GENERIC
    return LatticeShape(tag, (r.g1, r.g2))


def triangular_lattice(z: CycloInt) -> Lattice2:
    """The triangular lattice Lambda(z, g_delta z)."""
    return Lattice2.from_cyclo(z, cyclo_mul(G_DELTA, z))


# -- triangle lattice numbers ------------------------------------------------


def _search_witness(n: int) -> tuple[int, int] | None:
    if n == 0:
        return (0, 0)
    # n2^2 + n1 n2 + (n1^2 - n) = 0 has an integer root iff 4n - 3 n1^2 is a square.
    # Every norm has a representative with n1 >= n2 >= 0, so n1 <= sqrt(n);
    # scanning n1 downward returns that one, e.g. 7 -> (2, 1).
    for n1 in range(math.isqrt(n), -1, -1):
        disc = 4 * n - 3 * n1 * n1
        s = math.isqrt(disc)
        if s * s == disc and (s - n1) % 2 == 0:
            n2 = (s - n1) // 2
            if n2 >= 0:
                return (n1, n2)
    return None


def _factor_criterion(n: int) -> bool:
    """n > 0 is a norm from Z[g_delta] iff primes = 2 mod 3 occur to even powers."""
    if n == 0:
        return True
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if p % 3 == 2 and e % 2:
                return False
        p += 1 if p == 2 else 2
    return not (m > 1 and m % 3 == 2)


def is_triangle_lattice_number(n: int) -> tuple[bool, tuple[int, int] | None]:
    """Decide n = n1^2 + n1 n2 + n2^2, returning a witness when it holds.

    Two independent routes are run and must agree.
    """
    if n < 0:
        raise ValueError("triangle lattice numbers are nonnegative")
    witness = _search_witness(n)
    by_factor = _factor_criterion(n)
    if (witness is not None) != by_factor:
        raise ConsistencyError(f"search and factorization disagree at n={n}")
    return witness is not None, witness


def triangle_lattice_numbers(limit: int) -> list[int]:
    return [n for n in range(limit + 1) if is_triangle_lattice_number(n)[0]]


# -- sublattices ---------------------------------------------------------------


def _integer(x) -> int | None:
    if isinstance(x, QuadExt):
        if x.b == 0 and x.a.denominator == 1:
            return int(x.a)
        return None
    r = round(x)
    return int(r) if abs(x - r) <= 1e-7 else None


def sublattice_index(sub: Lattice2, sup: Lattice2) -> int:
    rows = []
    for gen in (sub.g1, sub.g2):
        coords = [_integer(c) for c in sup.coords(gen)]
        if None in coords:
            raise ContainmentError("sublattice generator not in the super-lattice")
        rows.append(coords)
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    return abs(det)
