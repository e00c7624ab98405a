from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toruspack import lattice as lat
from toruspack.cyclotomic import G_DELTA, CycloInt, QuadExt
from toruspack.errors import ContainmentError, DegenerateLatticeError
from toruspack.lattice import (Lattice2, area, classify_shape, is_triangle_lattice_number, reduce,
                               reduce_with_transform, sublattice_index, triangle_lattice_numbers,
                               triangular_lattice)
from oracles import brute_shape, brute_triangle_numbers, lattice_matrix, short_vectors

HALF = Fraction(1, 2)
UNIT_TRI = Lattice2.from_cyclo(CycloInt(1, 0, 0, 0), G_DELTA)
FIRST_NUMBERS = [0, 1, 3, 4, 7, 9, 12, 13, 16, 19, 21, 25, 27, 28, 31, 36, 37, 39, 43, 48, 49]


def exact(x, y):
    return (QuadExt.coerce(x), QuadExt.coerce(y))


def test_area_examples():
    assert area(UNIT_TRI) == QuadExt(0, HALF)
    assert area(Lattice2(exact(1, 0), exact(0, 1))) == 1
    assert area(triangular_lattice(CycloInt(2, 0, 1, 0))) == QuadExt(0, Fraction(7, 2))


def test_area_ignores_generator_order():
    l = Lattice2(exact(0, 1), exact(1, 0))
    assert area(l) == 1


def test_degenerate_lattice():
    with pytest.raises(DegenerateLatticeError):
        Lattice2(exact(1, 0), exact(2, 0))


def test_reduce_examples():
    r = reduce(Lattice2(exact(1, 0), exact(1, 1)))
    assert {tuple(map(abs, r.g1)), tuple(map(abs, r.g2))} == {(1, 0), (0, 1)}
    assert reduce(UNIT_TRI).g1 == UNIT_TRI.g1


def test_reduce_against_short_vector_enumeration():
    # Lambda(5, 5 g_delta + 7)
    l = Lattice2(exact(5, 0), (QuadExt(Fraction(19, 2)), QuadExt(0, Fraction(5, 2))))
    r = reduce(l)
    vs = short_vectors(lattice_matrix(l))
    n1, n2 = float(lat.dot(r.g1, r.g1)) ** 0.5, float(lat.dot(r.g2, r.g2)) ** 0.5
    assert n1 == pytest.approx(vs[0][0])
    # g2* must be the shortest vector independent of g1*
    B = lattice_matrix(r)
    indep = [d for d, (a, b) in short_vectors(B) if b != 0]
    assert n2 == pytest.approx(indep[0])
    assert classify_shape(l).tag == brute_shape(lattice_matrix(l))


@pytest.mark.parametrize("l, tag", [
    (UNIT_TRI, "triangular"),
    (Lattice2(exact(2, 0), exact(0, 2)), "square"),
    (Lattice2(exact(1, 0), exact(0, 2)), "generic"),
    (triangular_lattice(CycloInt(2, 1, 1, 0)), "triangular"),
    (Lattice2.from_complex(1.0, complex(0.5, 3 ** 0.5 / 2)), "triangular"),
    (Lattice2.from_complex(1.0, 1j), "square"),
    (Lattice2.from_complex(1.0, complex(0.3, 1.1)), "generic"),
])
def test_classify_examples(l, tag):
    assert classify_shape(l).tag == tag
    assert brute_shape(lattice_matrix(l)) == tag


def _random_unimodular(rng):
    while True:
        a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
        if a * d - b * c in (1, -1):
            return a, b, c, d


@pytest.mark.parametrize("l", [
    UNIT_TRI,
    Lattice2(exact(3, 0), exact(0, 3)),
    Lattice2(exact(1, 0), (QuadExt(Fraction(1, 3)), QuadExt(2))),
    triangular_lattice(CycloInt(1, 2, 1, 0)),
])
def test_shape_and_area_invariant_under_unimodular_change(l):
    rng = random.Random(7)
    tag, a0 = classify_shape(l).tag, area(l)
    for _ in range(100):
        a, b, c, d = _random_unimodular(rng)
        m = Lattice2(lat.add(lat.scale(a, l.g1), lat.scale(b, l.g2)), lat.add(lat.scale(c, l.g1), lat.scale(d, l.g2)))
        assert classify_shape(m).tag == tag
        assert area(m) == a0


def test_reduce_transform_is_unimodular():
    l = Lattice2(exact(7, 3), exact(2, 1))
    r, (u1, u2) = reduce_with_transform(l)
    assert abs(u1[0] * u2[1] - u1[1] * u2[0]) == 1
    assert r.g1 == lat.add(lat.scale(u1[0], l.g1), lat.scale(u1[1], l.g2))


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 5))
def test_area_scales_with_square(n1, n2, s):
    if (n1, n2) == (0, 0):
        return
    l = triangular_lattice(CycloInt(n1, 0, n2, 0))
    m = triangular_lattice(CycloInt(s * n1, 0, s * n2, 0))
    assert area(m) == s * s * area(l)


def test_triangle_numbers_first_values():
    assert triangle_lattice_numbers(49) == FIRST_NUMBERS


def test_triangle_numbers_match_brute_force_up_to_10000():
    brute = brute_triangle_numbers(10000)
    for n in range(10001):
        ok, w = is_triangle_lattice_number(n)
        assert ok == (n in brute)
        if ok:
            assert w[0] ** 2 + w[0] * w[1] + w[1] ** 2 == n


def test_triangle_number_examples():
    assert is_triangle_lattice_number(7) == (True, (2, 1))
    assert is_triangle_lattice_number(2) == (False, None)
    ok, (a, b) = is_triangle_lattice_number(91)
    assert ok and a * a + a * b + b * b == 91
    with pytest.raises(ValueError):
        is_triangle_lattice_number(-1)


def test_sublattice_index():
    sup = UNIT_TRI
    assert sublattice_index(triangular_lattice(CycloInt(2, 0, 1, 0)), sup) == 7
    assert sublattice_index(sup, sup) == 1
    assert sublattice_index(Lattice2.from_cyclo(CycloInt(2, 0, 0, 0), CycloInt(0, 0, 2, 0)), sup) == 4
    with pytest.raises(ContainmentError):
        sublattice_index(Lattice2(exact(HALF, 0), exact(0, 1)), sup)
