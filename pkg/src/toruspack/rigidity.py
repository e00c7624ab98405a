"""Infinitesimal rigidity of contact graphs on a fixed torus.

A packing is collectively jammed exactly when its bar framework is
infinitesimally rigid (kernel = the two translations) and some equilibrium
stress is strictly negative on every contact.  Both halves are decided
exactly over Q(sqrt 3) for exact packings, and with SVD + HiGHS otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InvalidPackingError
from .packing import DEFAULT_TOL, ContactGraph, TorusPacking, contact_graph, validate

RANK_TOL = 1e-9


@dataclass(frozen=True)
class RigidityMatrix:
    rows: list  # m x 2n, exact scalars or a float ndarray
    n: int
    edges: tuple
    exact: bool

    @property
    def m(self) -> int:
        return len(self.edges)

    def as_float(self) -> np.ndarray:
        if not self.exact:
            return np.asarray(self.rows, dtype=float)
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(self.m, 2 * self.n)


def rigidity_matrix(g: ContactGraph, p: TorusPacking, exact: bool | None = None) -> RigidityMatrix:
    if g.n != p.n:
        raise InvalidPackingError("contact graph and packing disagree on n")
    use_exact = p.exact if exact is None else (exact and p.exact)
    zero = linalg.ZERO if use_exact else 0.0
    rows = []
    for i, j, w in g.edges:
        if not (0 <= i < p.n and 0 <= j < p.n):
            raise InvalidPackingError(f"edge ({i}, {j}) references a missing disk")
        row = [zero] * (2 * p.n)
        if i != j:
            e = p.contact_vector(i, j, w)
            if not use_exact:
                e = (float(e[0]), float(e[1]))
            row[2 * j], row[2 * j + 1] = e
            row[2 * i], row[2 * i + 1] = -e[0], -e[1]
        rows.append(row)
    if not use_exact:
        rows = np.array(rows, dtype=float).reshape(len(rows), 2 * p.n)
    return RigidityMatrix(rows, p.n, g.edges, use_exact)


def _translations(n: int, zero, one):
    tx = [one if k % 2 == 0 else zero for k in range(2 * n)]
    ty = [zero if k % 2 == 0 else one for k in range(2 * n)]
    return tx, ty


def matrix_rank(M: RigidityMatrix) -> int:
    if M.exact:
        return linalg.rank(M.rows)
    return linalg.float_rank(M.rows, RANK_TOL)


def bar_flex_space(M: RigidityMatrix) -> list:
    """Basis of infinitesimal bar flexes modulo translations."""
    n = M.n
    if M.exact:
        kernel = linalg.null_space(M.rows, 2 * n)
        tx, ty = _translations(n, linalg.ZERO, linalg.ONE)
        projected = []
        for f in kernel:
            mx = sum((f[k] for k in range(0, 2 * n, 2)), linalg.ZERO) / n
            my = sum((f[k] for k in range(1, 2 * n, 2)), linalg.ZERO) / n
            projected.append([x - (mx if k % 2 == 0 else my) for k, x in enumerate(f)])
        R, piv = linalg.rref(projected)
        return [row for row in R[: len(piv)]]
    K = linalg.float_null_space(np.asarray(M.rows, dtype=float).reshape(M.m, 2 * n), RANK_TOL)
    T = np.zeros((2, 2 * n))
    T[0, 0::2] = 1 / np.sqrt(n)
    T[1, 1::2] = 1 / np.sqrt(n)
    P = K - (K @ T.T) @ T
    if P.size == 0:
        return []
    u, s, vt = np.linalg.svd(P, full_matrices=False)
    r = int((s > 1e-8).sum())
    return list(vt[:r])


def stress_space(M: RigidityMatrix) -> list:
    """Basis of equilibrium stresses (left kernel of the rigidity matrix)."""
    if M.m == 0:
        return []
    if M.exact:
        return linalg.left_null_space(M.rows, 2 * M.n)
    A = np.asarray(M.rows, dtype=float).reshape(M.m, 2 * M.n)
    return list(linalg.float_null_space(A.T, RANK_TOL))


def strictly_negative_stress(S: list, exact: bool = True):
    """A stress in span(S) with every coordinate <= -1, or None."""
    if not S:
        return None
    if exact:
        return linalg.negative_combination(S)
    w = linalg.float_negative_combination(np.array(S, dtype=float))
    return None if w is None else list(w)


def equilibrium_residual(p: TorusPacking, g: ContactGraph, stress) -> float:
    """max over vertices of |sum_k w_jk (p_k - p_j)|."""
    force = np.zeros((p.n, 2))
    for (i, j, w), s in zip(g.edges, stress):
        if i == j:
            continue
        e = np.array([float(x) for x in p.contact_vector(i, j, w)])
        force[i] += float(s) * e
        force[j] -= float(s) * e
    return float(np.abs(force).max()) if p.n else 0.0


@dataclass
class RigidityReport:
    n: int
    m: int
    rank: int
    bar_rigid: bool
    flex_basis: list
    stress_dim: int
    negative_stress: list | None
    collectively_jammed: bool
    contact_count_ok: bool
    exact: bool
    edges: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "bar_rigid": self.bar_rigid,
            "jammed": self.collectively_jammed,
            "m": self.m,
            "n": self.n,
            "rank": self.rank,
            "stress_dim": self.stress_dim,
            "exact": self.exact,
            "flex": [[float(x) for x in f] for f in self.flex_basis] if self.flex_basis else None,
            "stress": [float(x) for x in self.negative_stress] if self.negative_stress is not None else None,
            "contact_count_ok": self.contact_count_ok,
        }


def analyze(p: TorusPacking, tol: float = DEFAULT_TOL, exact: bool | None = None,
            graph: ContactGraph | None = None) -> RigidityReport:
    if not validate(p, tol).valid:
        raise InvalidPackingError("cannot analyze an overlapping packing")
    g = graph if graph is not None else contact_graph(p, tol)
    M = rigidity_matrix(g, p, exact)
    r = matrix_rank(M)
    bar_rigid = r == 2 * p.n - 2
    flexes = [] if bar_rigid else bar_flex_space(M)
    S = stress_space(M)
    neg = strictly_negative_stress(S, M.exact) if S or g.m == 0 else None
    if g.m == 0:
        neg = []
    return RigidityReport(
        n=p.n,
        m=g.m,
        rank=r,
        bar_rigid=bar_rigid,
        flex_basis=flexes,
        stress_dim=len(S),
        negative_stress=neg,
        collectively_jammed=bar_rigid and neg is not None,
        contact_count_ok=g.m >= 2 * p.n - 1,
        exact=M.exact,
        edges=g.edges,
    )


def apply_matrix(M: RigidityMatrix, f) -> np.ndarray:
    """M f in floats, for certificate checks."""
    return M.as_float() @ np.array([float(x) for x in f])
