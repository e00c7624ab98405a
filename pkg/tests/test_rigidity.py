from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from toruspack import tilings
from toruspack.cyclotomic import QuadExt
from toruspack.errors import InvalidPackingError
from toruspack.lattice import Lattice2
from toruspack.packing import ContactGraph, TorusPacking, contact_graph, remove_disk
from toruspack.rigidity import (analyze, bar_flex_space, equilibrium_residual, matrix_rank, rigidity_matrix,
                                stress_space, strictly_negative_stress)
from corpus import dodecagonal, eight_disk_strip, triangular
from oracles import float_rigidity_matrix, svd_rank

HALF = Fraction(1, 2)


def _check_report(p, rep, g):
    M = rigidity_matrix(g, p).as_float()
    for f in rep.flex_basis:
        f = np.array([float(x) for x in f])
        assert np.abs(M @ f).max() < 1e-10
        assert abs(f[0::2].sum()) < 1e-10 and abs(f[1::2].sum()) < 1e-10
    if rep.negative_stress is not None and rep.m:
        assert max(float(x) for x in rep.negative_stress) <= -1 + 1e-12
        assert equilibrium_residual(p, g, rep.negative_stress) < 1e-10
    if rep.collectively_jammed:
        assert rep.contact_count_ok and rep.m >= 2 * rep.n - 1


def test_single_disk_self_loops():
    p = triangular(1, 0)
    g = contact_graph(p)
    M = rigidity_matrix(g, p)
    assert M.m == 3 and all(x == 0 for r in M.rows for x in r)
    assert len(stress_space(M)) == 3
    rep = analyze(p)
    assert rep.bar_rigid and rep.collectively_jammed and rep.flex_basis == []


def test_two_disks_single_contact():
    l = Lattice2((QuadExt(4), QuadExt(0)), (QuadExt(0), QuadExt(4)))
    p = TorusPacking(l, ((0, 0), (Fraction(1, 4), 0)), HALF)
    g = contact_graph(p)
    assert g.m == 1
    M = rigidity_matrix(g, p)
    assert matrix_rank(M) == 1
    assert stress_space(M) == []
    assert len(bar_flex_space(M)) == 1  # kernel 3, minus 2 translations
    rep = analyze(p)
    assert not rep.collectively_jammed
    _check_report(p, rep, g)


@pytest.mark.parametrize("n1, n2", [(1, 0), (1, 1), (2, 1), (2, 2)])
def test_triangular_packings_jammed(n1, n2):
    p = triangular(n1, n2)
    g = contact_graph(p)
    rep = analyze(p)
    assert rep.collectively_jammed and rep.rank == 2 * p.n - 2
    assert rep.rank == svd_rank(float_rigidity_matrix(p, g.edges)) or p.n == 1
    # the uniform stress balances by symmetry
    assert equilibrium_residual(p, g, [-1] * g.m) < 1e-12
    _check_report(p, rep, g)


def test_hole_packing_jammed():
    p = remove_disk(triangular(2, 1), 3)
    rep = analyze(p)
    assert rep.collectively_jammed and rep.m == 15
    _check_report(p, rep, contact_graph(p))


def test_eight_disk_strip_rigidity():
    _, p = eight_disk_strip()
    g = contact_graph(p)
    M = rigidity_matrix(g, p)
    assert matrix_rank(M) == 14 == svd_rank(float_rigidity_matrix(p, g.edges))
    rep = analyze(p)
    assert rep.collectively_jammed and rep.m == 16
    _check_report(p, rep, g)


def test_strip_stress_is_uniform_on_horizontals():
    t, p = tilings.build_strip_tiling(1, 9, 15, (QuadExt(Fraction(1, 7)), QuadExt(0, Fraction(4, 7))))
    g = contact_graph(p)
    S = stress_space(rigidity_matrix(g, p))
    assert S
    w = strictly_negative_stress(S)
    assert w is not None
    assert equilibrium_residual(p, g, w) < 1e-10


def test_dodecagonal_not_jammed_with_rotation_flex():
    t = dodecagonal()
    p = t.to_packing()
    g = contact_graph(p)
    rep = analyze(p)
    assert not rep.collectively_jammed and not rep.bar_rigid
    _check_report(p, rep, g)
    # the derivative of the two-class rotation, composed with the rotation
    # that keeps the lattice fixed, is a first-order flex
    pts = [complex(*map(float, z.re_im())) for z in t.cyclo]
    lam2 = [complex(*map(float, z.lambda2().re_im())) for z in t.cyclo]
    z1 = t.lattice.cyclo[0]
    dz = 1j * complex(*map(float, z1.lambda2().re_im()))
    rot = dz / complex(*map(float, z1.re_im()))  # d/dtheta of z1(0)/z1(theta), negated
    f = []
    for x, y in zip(pts, lam2):
        v = 1j * y - rot * x
        f += [v.real, v.imag]
    f = np.array(f)
    M = rigidity_matrix(g, p).as_float()
    assert np.abs(M @ f).max() < 1e-10


def test_exact_and_float_paths_agree():
    for p in (triangular(2, 1), eight_disk_strip()[1], dodecagonal().to_packing(), remove_disk(triangular(2, 2), 0)):
        a, b = analyze(p), analyze(p, exact=False)
        assert a.exact and not b.exact
        assert a.rank == b.rank and a.collectively_jammed == b.collectively_jammed


def test_rigidity_matrix_rejects_bad_graph():
    p = triangular(1, 1)
    with pytest.raises(InvalidPackingError):
        rigidity_matrix(ContactGraph(3, ((0, 5, (0, 0)),)), p)
    with pytest.raises(InvalidPackingError):
        rigidity_matrix(ContactGraph(2, ()), p)


def test_report_json_keys():
    rep = analyze(eight_disk_strip()[1])
    d = rep.to_json()
    assert {"bar_rigid", "jammed", "m", "n", "flex", "stress", "contact_count_ok"} <= set(d)
    assert d["flex"] is None and len(d["stress"]) == 16
