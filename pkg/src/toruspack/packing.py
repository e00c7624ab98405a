"""Equal-disk packings on flat tori and their periodic contact graphs."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .cyclotomic import CycloInt, QuadExt
from .errors import InvalidPackingError
from .lattice import Lattice2, reduce_with_transform, scalar, triangular_lattice
from . import lattice as lat

DELTA_TRI = math.pi / math.sqrt(12)
DEFAULT_TOL = 1e-8
_WRAP_RANGE = range(-2, 3)


def _floor(x) -> int:
    if isinstance(x, QuadExt):
        return x.floor()
    return math.floor(x)


def _frac_part(x):
    f = x - _floor(x)
    if isinstance(f, float) and f >= 1.0:
        f = 0.0
    return f


@dataclass(frozen=True)
class TorusPacking:
    """n equal disks on C / lattice.  Centers are lattice coordinates in [0, 1)."""

    lattice: Lattice2
    centers: tuple
    radius: object
    labels: tuple = field(default=())

    def __post_init__(self):
        if len(self.centers) < 1:
            raise InvalidPackingError("a packing needs at least one disk")
        cs = tuple((_frac_part(scalar(u)), _frac_part(scalar(v))) for u, v in self.centers)
        object.__setattr__(self, "centers", cs)
        object.__setattr__(self, "radius", scalar(self.radius))
        if float(self.radius) <= 0:
            raise InvalidPackingError("radius must be positive")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(len(cs))))
        elif len(self.labels) != len(cs):
            raise InvalidPackingError("one label per disk required")

    @property
    def n(self) -> int:
        return len(self.centers)

    @property
    def exact(self) -> bool:
        return (
            self.lattice.exact
            and isinstance(self.radius, QuadExt)
            and all(isinstance(c, QuadExt) for uv in self.centers for c in uv)
        )

    def point(self, i: int) -> tuple:
        return self.lattice.point(self.centers[i])

    def float_points(self) -> np.ndarray:
        return np.array([lat.to_float(self.point(i)) for i in range(self.n)])

    def float_centers(self) -> np.ndarray:
        return np.array([[float(u), float(v)] for u, v in self.centers])

    def contact_vector(self, i: int, j: int, wrap) -> tuple:
        """p_j + w1 g1 + w2 g2 - p_i."""
        ci, cj = self.centers[i], self.centers[j]
        return self.lattice.point((cj[0] + wrap[0] - ci[0], cj[1] + wrap[1] - ci[1]))

    def with_centers(self, centers, radius=None) -> "TorusPacking":
        return replace(self, centers=tuple(centers), radius=self.radius if radius is None else radius,
                       labels=self.labels if len(centers) == self.n else ())


@dataclass(frozen=True)
class ContactGraph:
    n: int
    edges: tuple  # (i, j, (w1, w2)) canonical

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg


def canonical_edge(i: int, j: int, w) -> tuple:
    w = (int(w[0]), int(w[1]))
    if i > j or (i == j and w < (0, 0)):
        return (j, i, (-w[0], -w[1]))
    return (i, j, w)


def _image_shifts(p: TorusPacking):
    """Integer wraps (original basis) covering all images near a centered difference."""
    _, (u1, u2) = reduce_with_transform(p.lattice)
    det = u1[0] * u2[1] - u1[1] * u2[0]
    inv = ((u2[1] * det, -u1[1] * det), (-u2[0] * det, u1[0] * det))  # U^-1 since det = +-1
    shifts = [
        (k1 * u1[0] + k2 * u2[0], k1 * u1[1] + k2 * u2[1])
        for k1, k2 in itertools.product(_WRAP_RANGE, repeat=2)
    ]
    return (u1, u2), inv, shifts


def _exact_pairs(p: TorusPacking, cutoff: float | None = None):
    """Yield (i, j, wrap, dist_sq) exactly for every canonical pair image whose
    float distance is within ``cutoff`` (default: the float minimum).

    A relative slack of 1e-6 keeps the float prefilter far from rounding error,
    so every image that matters is evaluated exactly.
    """
    if cutoff is None:
        cutoff = min(d for *_, d in _float_pairs(p, cutoff=float("inf")))
    for i, j, w, d in _float_pairs(p, cutoff=cutoff * (1 + 1e-6) + 1e-12):
        ci, cj = p.centers[i], p.centers[j]
        e = p.lattice.point((cj[0] + w[0] - ci[0], cj[1] + w[1] - ci[1]))
        yield i, j, w, lat.dot(e, e)


def _float_pairs(p: TorusPacking, cutoff: float):
    """Vectorized float version: (i, j, wrap, dist) with dist <= cutoff."""
    (u1, u2), inv, shifts = _image_shifts(p)
    B = p.lattice.float_matrix()
    C = p.float_centers()
    U = np.array([u1, u2], dtype=float)
    Uinv = np.array(inv, dtype=float)
    S = np.array(shifts, dtype=float)
    iu, ju = np.triu_indices(p.n)
    D = C[ju] - C[iu]
    base = -np.floor(D @ Uinv + 0.5) @ U
    W = base[:, None, :] + S[None, :, :]  # pairs x shifts x 2
    V = (D[:, None, :] + W) @ B
    dist = np.sqrt((V**2).sum(axis=2))
    out = []
    seen = set()
    for a, s in zip(*np.nonzero(dist <= cutoff)):
        i, j = int(iu[a]), int(ju[a])
        w = (int(round(W[a, s, 0])), int(round(W[a, s, 1])))
        if i == j and w == (0, 0):
            continue
        key = canonical_edge(i, j, w)
        if key in seen:
            continue
        seen.add(key)
        out.append((key[0], key[1], key[2], float(dist[a, s])))
    return out


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    min_distance: float
    min_distance_sq: object
    overlap: float


def validate(p: TorusPacking, tol: float = DEFAULT_TOL) -> ValidationResult:
    """Check all periodic pair distances against 2r.

    Exact packings are checked exactly and ``tol`` is ignored.
    """
    if p.exact:
        best = None
        for _, _, _, d2 in _exact_pairs(p):
            if best is None or d2 < best:
                best = d2
        four_r2 = 4 * p.radius * p.radius
        root = best.sqrt()
        mind = float(root) if root is not None else math.sqrt(float(best))
        return ValidationResult(best >= four_r2, mind, best, max(0.0, 2 * float(p.radius) - mind))
    r = float(p.radius)
    pairs = _float_pairs(p, cutoff=float("inf"))
    mind = min(d for *_, d in pairs)
    return ValidationResult(mind >= 2 * r - tol * r, mind, mind * mind, max(0.0, 2 * r - mind))


def min_periodic_distance(p: TorusPacking) -> float:
    return min(d for *_, d in _float_pairs(p, cutoff=float("inf")))


def contact_graph(p: TorusPacking, tol: float = DEFAULT_TOL, check: bool = True) -> ContactGraph:
    if p.exact:
        four_r2 = 4 * p.radius * p.radius
        edges = []
        for i, j, w, d2 in _exact_pairs(p, cutoff=2 * float(p.radius)):
            if check and d2 < four_r2:
                raise InvalidPackingError(f"disks {i} and {j} overlap")
            if d2 == four_r2:
                edges.append((i, j, w))
    else:
        r = float(p.radius)
        pairs = _float_pairs(p, cutoff=2 * r + tol * r)
        if check and any(d < 2 * r - tol * r for *_, d in pairs):
            raise InvalidPackingError("packing has overlapping disks")
        edges = [(i, j, w) for i, j, w, d in pairs if abs(d - 2 * r) <= tol * r]
    return ContactGraph(p.n, tuple(sorted(edges)))


def density(p: TorusPacking, tol: float = DEFAULT_TOL, check: bool = True) -> float:
    if check and not validate(p, tol).valid:
        raise InvalidPackingError("density of an invalid packing")
    r = float(p.radius)
    return p.n * math.pi * r * r / float(lat.area(p.lattice))


def density_ratio(p: TorusPacking):
    """Exact density / (pi/sqrt 12) = n r^2 sqrt(12) / area, when the packing is exact."""
    if not p.exact:
        return density(p, check=False) / DELTA_TRI
    return p.n * p.radius * p.radius * QuadExt(0, 2) / lat.area(p.lattice)


def triangular_coset_coords(n1: int, n2: int) -> list[tuple[Fraction, Fraction]]:
    """Coordinates of Lambda_delta modulo Lambda(z, g_delta z), z = n1 + n2 g_delta."""
    n = n1 * n1 + n1 * n2 + n2 * n2
    seen = []
    found = set()
    for i in range(n):
        for j in range(n):
            u = Fraction(i * (n1 + n2) + j * n2, n) % 1
            v = Fraction(-i * n2 + j * n1, n) % 1
            if (u, v) not in found:
                found.add((u, v))
                seen.append((u, v))
    return sorted(seen)


def build_triangular_packing(n1: int, n2: int) -> TorusPacking:
    if n1 == 0 and n2 == 0:
        raise ValueError("(n1, n2) must be nonzero")
    z = CycloInt(n1, 0, n2, 0)
    coords = triangular_coset_coords(n1, n2)
    n = n1 * n1 + n1 * n2 + n2 * n2
    assert len(coords) == n
    return TorusPacking(triangular_lattice(z), tuple(coords), Fraction(1, 2))


def remove_disk(p: TorusPacking, i: int) -> TorusPacking:
    if p.n < 2:
        raise ValueError("cannot remove the only disk")
    if not 0 <= i < p.n:
        raise IndexError(f"disk index {i} out of range")
    keep = [k for k in range(p.n) if k != i]
    return TorusPacking(
        p.lattice,
        tuple(p.centers[k] for k in keep),
        p.radius,
        tuple(p.labels[k] for k in keep),
    )


def subpacking(p: TorusPacking, keep) -> TorusPacking:
    keep = sorted(keep)
    return TorusPacking(p.lattice, tuple(p.centers[k] for k in keep), p.radius,
                        tuple(p.labels[k] for k in keep))


def packing_from_points(l: Lattice2, points, radius, labels=()) -> TorusPacking:
    """Build a packing from Cartesian points (lifts anywhere in the plane)."""
    return TorusPacking(l, tuple(l.coords(lat.vec(*pt)) for pt in points), radius, tuple(labels))
