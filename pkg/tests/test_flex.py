from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from toruspack import tilings
from toruspack.cyclotomic import CycloInt
from toruspack.errors import MalformedTilingError, StripsPresentError
from toruspack.lattice import Lattice2, classify_shape
from toruspack.tilings import complete, flex, flex_exact, flexed_lattice, quad_angles, rotate_odd, stats
from corpus import dodecagonal, eight_disk_strip, snub_square

FLEXIBLE = {"dodecagonal": dodecagonal, "snub": snub_square, "triangles": lambda: tilings.triangle_tiling(2, 1)}


@pytest.mark.parametrize("name", FLEXIBLE)
def test_flex_preserves_edge_lengths(name):
    t = FLEXIBLE[name]()
    rng = np.random.default_rng(11)
    for th in rng.uniform(-math.pi / 3, math.pi / 3, 100):
        assert np.abs(flex(t, th).edge_lengths(t) - 1).max() < 1e-12


@pytest.mark.parametrize("name", FLEXIBLE)
def test_flex_at_zero_is_identity(name):
    t = FLEXIBLE[name]()
    fc = flex(t, 0.0)
    assert np.allclose(fc.points, np.array(t.float_points()), rtol=0, atol=1e-15)
    z = flex_exact(t, 0)
    assert z.cyclo == t.cyclo and z.faces == t.faces and z.lattice.basis() == t.lattice.basis()
    fl = flexed_lattice(t, 0.0)
    assert fl.shape == classify_shape(t.lattice).tag


def test_rotate_odd():
    z = CycloInt(1, 2, 3, 4)
    assert rotate_odd(z, 0) == z and rotate_odd(z, 12) == z
    # even steps keep the odd part odd, so they compose
    assert rotate_odd(rotate_odd(z, 4), 8) == z
    for k in range(-6, 7):
        w = complex(*map(float, rotate_odd(z, k).re_im()))
        lam1, lam2 = (complex(*map(float, x.re_im())) for x in (z.lambda1(), z.lambda2()))
        assert abs(w - (lam1 + lam2 * np.exp(1j * k * math.pi / 6))) < 1e-12
    assert rotate_odd(z, 6) == z.lambda1() - z.lambda2()


def test_triangular_torus_stays_triangular_and_contracts():
    t = dodecagonal()
    areas = []
    for th in np.linspace(0, math.pi / 3, 41):
        fl = flexed_lattice(t, th)
        assert fl.shape == "triangular"
        areas.append(fl.area)
    assert all(b < a for a, b in zip(areas, areas[1:]))
    # the flex is symmetric in theta
    assert flexed_lattice(t, -0.3).area == pytest.approx(flexed_lattice(t, 0.3).area, rel=1e-14)


def test_square_torus_flex_keeps_lengths_not_angle():
    t = snub_square()
    assert flexed_lattice(t, 0.0).shape == "square"
    for th in (0.2, -0.4, 0.7):
        fl = flexed_lattice(t, th)
        assert fl.lengths[0] == pytest.approx(fl.lengths[1], rel=1e-14)
        assert abs(fl.cos_angle) > 1e-3
        assert fl.shape == "generic"
        assert fl.area < flexed_lattice(t, 0.0).area
        # the index-2 rectangular sublattice spanned by the diagonals stays perpendicular
        g1, g2 = fl.lattice.float_matrix()
        d1, d2 = g1 + g2, g1 - g2
        assert abs(d1 @ d2) < 1e-12
        assert abs(np.linalg.norm(d1) - np.linalg.norm(d2)) > 1e-3


def _square_angle_root(t, lo, hi):
    return brentq(lambda th: quad_angles(t, th)[0] - math.pi / 3, lo, hi, xtol=1e-14)


@pytest.mark.parametrize("side", [1, -1])
def test_squares_reach_sixty_degrees(side):
    t = dodecagonal()
    th = _square_angle_root(t, 0.0, side * math.pi / 3)
    assert abs(abs(th) - math.pi / 6) < 1e-9
    assert max(abs(a - math.pi / 3) for a in quad_angles(t, th)) < 1e-9
    steps = round(th / (math.pi / 6))
    c = complete(flex_exact(t, steps))
    assert c.n == 13 and stats(c).f_counts == {3: 26}
    assert classify_shape(c.lattice).tag == "triangular"


@pytest.mark.parametrize("steps", [3, -3])
def test_squares_collapse_to_seven_vertices(steps):
    t = dodecagonal()
    assert max(quad_angles(t, steps * math.pi / 6)) < 1e-12
    c = complete(flex_exact(t, steps))
    assert c.n == 7 and stats(c).f_counts == {3: 14}
    assert classify_shape(c.lattice).tag == "triangular"


def test_flex_exact_matches_float_flex():
    t = dodecagonal()
    for steps in (1, 2, -1, 3):
        e = flex_exact(t, steps)
        fl = flexed_lattice(t, steps * math.pi / 6)
        assert abs(np.linalg.det(e.lattice.float_matrix())) == pytest.approx(fl.area, rel=1e-12)


def test_flex_refuses_strips():
    l = Lattice2.from_cyclo(CycloInt(1, 0, 0, 0), CycloInt(0, 0, 0, 1))
    grid = tilings.Tiling.build(l, [(CycloInt(0, 0, 0, 0), (0, 3, 6, 9))], cyclotomic=True)
    assert len(tilings.detect_strips(grid)) == 2
    with pytest.raises(StripsPresentError):
        flex(grid, 0.1)
    with pytest.raises(StripsPresentError):
        flex_exact(grid, 1)


def test_flex_refuses_non_cyclotomic():
    with pytest.raises(MalformedTilingError):
        flex(eight_disk_strip()[0], 0.1)
