"""Exact linear algebra over ordered fields (Fraction, QuadExt).

Only what the rigidity code needs: row reduction, kernels, and a small
tableau simplex with Bland's rule for the negative-stress feasibility LP.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cyclotomic import QuadExt

ZERO = QuadExt(0)
ONE = QuadExt(1)


def rref(rows):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c] if not isinstance(A[r][c], QuadExt) else A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                A[i] = [a - f * b if b else a for a, b in zip(Ai, Ar)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def null_space(rows, ncols: int):
    """Basis of {x : A x = 0} as a list of vectors."""
    zero = ZERO
    if not rows:
        return [[ONE if k == j else zero for k in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -R[r][f]
        basis.append(x)
    return basis


def transpose(rows, ncols: int):
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def left_null_space(rows, ncols: int):
    """Basis of {w : w^T A = 0}."""
    return null_space(transpose(rows, ncols), len(rows))


# -- floating path -------------------------------------------------------------


def float_rank(M: np.ndarray, rel_tol: float = 1e-9) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int((s > rel_tol * s[0]).sum())


def float_null_space(M: np.ndarray, rel_tol: float = 1e-9) -> np.ndarray:
    """Orthonormal kernel basis as rows."""
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols)
    _, s, vt = np.linalg.svd(M)
    r = int((s > rel_tol * s[0]).sum()) if s.size and s[0] > 0 else 0
    return vt[r:]


# -- exact simplex ---------------------------------------------------------------


def simplex_max(A, b, c, max_pivots: int = 100_000):
    """Maximize c.x subject to A x <= b, x >= 0, for b >= 0, exactly.

    Bland's smallest-index rule prevents cycling on the heavily degenerate
    problems produced by homogeneous stress constraints.  Returns
    ``(optimum, x)``; raises ``ValueError`` when the objective is unbounded.
    """
    m, n = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("initial slack basis requires b >= 0")
    # tableau rows: [A | I | b]; objective row holds reduced costs
    T = [list(A[i]) + [ONE if k == i else ZERO for k in range(m)] + [b[i]] for i in range(m)]
    cost = list(c) + [ZERO] * m + [ZERO]
    basis = [n + i for i in range(m)]
    for _ in range(max_pivots):
        enter = next((j for j in range(n + m) if cost[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ValueError("LP objective is unbounded")
        piv = T[leave][enter]
        inv = piv.inverse() if isinstance(piv, QuadExt) else 1 / piv
        T[leave] = [x * inv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, T[leave])]
        basis[leave] = enter
    else:  # pragma: no cover
        raise RuntimeError("simplex pivot limit reached")
    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][-1]
    opt = -cost[-1]
    return opt, x


def negative_combination(basis):
    """Find coefficients c with sum_k c_k basis[k] <= -1 componentwise.

    Solves  max t  s.t.  sum_k c_k B_k + t <= 0,  t <= 1,  c free.
    A positive optimum t yields the combination scaled by 1/t; t = 0 is an
    exact certificate that no strictly negative combination exists.
    """
    if not basis:
        return None
    K, m = len(basis), len(basis[0])
    if m == 0:
        return []
    guess = _rounded_float_combination(basis)
    if guess is not None:
        return guess
    A = []
    for e in range(m):
        row = [basis[k][e] for k in range(K)] + [-basis[k][e] for k in range(K)] + [ONE]
        A.append(row)
    A.append([ZERO] * (2 * K) + [ONE])
    b = [ZERO] * m + [ONE]
    c = [ZERO] * (2 * K) + [ONE]
    t, x = simplex_max(A, b, c)
    if not t > 0:
        return None
    coeffs = [(x[k] - x[K + k]) / t for k in range(K)]
    return [sum((coeffs[k] * basis[k][e] for k in range(K)), ZERO) for e in range(m)]


def _rounded_float_combination(basis, max_den: int = 10**6):
    """Float LP coefficients rounded to rationals, kept only if the exact
    combination is strictly negative; then scaled so its maximum is -1."""
    try:
        B = np.array([[float(x) for x in row] for row in basis])
        c = _float_lp(B)
    except (ValueError, OverflowError):
        return None
    if c is None:
        return None
    scale = np.abs(c).max()
    coeffs = [Fraction(float(x / scale)).limit_denominator(max_den) for x in c]
    w = [sum((coeffs[k] * basis[k][e] for k in range(len(basis)) if coeffs[k]), ZERO)
         for e in range(len(basis[0]))]
    top = max(w)
    if not top < 0:
        return None
    return [x / -top for x in w]


def _float_lp(basis: np.ndarray, tol: float = 1e-9):
    """Coefficients c maximizing t with c.basis + t <= 0, t in [0, 1], or None."""
    from scipy.optimize import linprog

    K, m = basis.shape
    res = linprog(
        c=np.r_[np.zeros(K), -1.0],
        A_ub=np.hstack([basis.T, np.ones((m, 1))]),
        b_ub=np.zeros(m),
        bounds=[(None, None)] * K + [(0.0, 1.0)],
        method="highs",
    )
    if res.status != 0 or -res.fun <= tol:
        return None
    return res.x[:K] / res.x[-1]


def float_negative_combination(basis: np.ndarray, tol: float = 1e-9):
    """Float counterpart of :func:`negative_combination` via HiGHS."""
    if basis.shape[0] == 0:
        return None
    c = _float_lp(basis, tol)
    return None if c is None else c @ basis
