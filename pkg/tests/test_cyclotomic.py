from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toruspack.cyclotomic import (G, CycloInt, QuadExt, cyclo_mul, cyclo_power, norm_sq, power_index,
                                  quad_sign, re_im)
from oracles import cyclo_value, quad_value

coeff = st.integers(-10, 10)
cyclo = st.builds(CycloInt, coeff, coeff, coeff, coeff)
rational = st.fractions(min_value=-50, max_value=50, max_denominator=40)
quad = st.builds(QuadExt, rational, rational)


def test_defining_relation():
    assert cyclo_mul(G, cyclo_power(3)) == CycloInt(-1, 0, 1, 0)


def test_g_to_the_sixth_is_minus_one():
    x = CycloInt(1, 0, 0, 0)
    for _ in range(6):
        x = cyclo_mul(x, G)
    assert x == CycloInt(-1, 0, 0, 0)


def test_square_of_one_plus_g_delta_matches_float_oracle():
    x = CycloInt(1, 0, 1, 0)
    sq = cyclo_mul(x, x)
    assert abs(cyclo_value(sq.coeffs) - cyclo_value(x.coeffs) ** 2) < 1e-12
    assert sq == CycloInt(0, 0, 3, 0)


@pytest.mark.parametrize("k, expected", [(0, (1, 0, 0, 0)), (11, (0, 1, 0, -1)), (6, (-1, 0, 0, 0))])
def test_powers(k, expected):
    assert cyclo_power(k).coeffs == expected


def test_all_powers_match_unit_circle():
    for k in range(-24, 24):
        assert abs(cyclo_value(cyclo_power(k).coeffs) - complex(math.cos(k * math.pi / 6), math.sin(k * math.pi / 6))) < 1e-12
        assert power_index(cyclo_power(k)) == k % 12
    assert power_index(CycloInt(1, 1, 0, 0)) is None


def test_re_im_examples():
    assert re_im(CycloInt(1, 0, 0, 0)) == (QuadExt(1), QuadExt(0))
    assert re_im(G) == (QuadExt(0, Fraction(1, 2)), QuadExt(Fraction(1, 2)))
    assert re_im(CycloInt(1, 0, 1, 0)) == (QuadExt(Fraction(3, 2)), QuadExt(0, Fraction(1, 2)))
    assert norm_sq(CycloInt(1, 0, 1, 0)) == 3


def test_norm_examples():
    assert norm_sq(CycloInt(2, 0, 1, 0)) == 7
    assert norm_sq(G) == 1
    assert norm_sq(CycloInt(1, 1, 0, 0)) == QuadExt(2, 1)
    assert abs(quad_value(norm_sq(CycloInt(1, 1, 0, 0))) - abs(1 + cyclo_value((0, 1, 0, 0))) ** 2) < 1e-12


@given(coeff, coeff)
def test_norm_on_triangular_sublattice(n1, n2):
    assert norm_sq(CycloInt(n1, 0, n2, 0)) == QuadExt(n1 * n1 + n1 * n2 + n2 * n2)


@given(cyclo, cyclo, cyclo)
def test_ring_axioms(x, y, z):
    assert cyclo_mul(cyclo_mul(x, y), z) == cyclo_mul(x, cyclo_mul(y, z))
    assert cyclo_mul(x, y + z) == cyclo_mul(x, y) + cyclo_mul(x, z)
    assert cyclo_mul(x, y) == cyclo_mul(y, x)


@given(cyclo)
def test_conjugate_gives_norm(x):
    re, im = re_im(cyclo_mul(x, x.conj()))
    assert im == 0
    assert re == norm_sq(x)
    assert abs(cyclo_value(x.conj().coeffs) - cyclo_value(x.coeffs).conjugate()) < 1e-9


@settings(max_examples=1000)
@given(cyclo)
def test_re_im_matches_float_evaluation(x):
    re, im = re_im(x)
    z = cyclo_value(x.coeffs)
    assert abs(quad_value(re) - z.real) < 1e-9
    assert abs(quad_value(im) - z.imag) < 1e-9
    assert re.a.denominator in (1, 2) and re.b.denominator in (1, 2)


@given(cyclo, cyclo)
def test_product_matches_float_evaluation(x, y):
    assert abs(cyclo_value(cyclo_mul(x, y).coeffs) - cyclo_value(x.coeffs) * cyclo_value(y.coeffs)) < 1e-8


@given(cyclo)
def test_twelfth_power_of_g_is_identity(x):
    y = x
    for _ in range(12):
        y = cyclo_mul(y, G)
    assert y == x


def test_lambda_split():
    x = CycloInt(3, -2, 5, 7)
    assert x.lambda1() == CycloInt(3, 0, 5, 0)
    assert x.lambda2() == CycloInt(0, -2, 0, 7)
    assert x.lambda1() + x.lambda2() == x


@pytest.mark.parametrize("q, s", [
    (QuadExt(0, 0), 0),
    (QuadExt(-7, Fraction(27, 4)), 1),
    (QuadExt(2, -1), 1),
    (QuadExt(-2, 1), -1),
    (QuadExt(7, -4), 1),
    (QuadExt(-7, 4), -1),
])
def test_quad_sign_table(q, s):
    assert quad_sign(q) == s


@given(quad)
def test_quad_sign_matches_float(q):
    v = quad_value(q)
    if abs(v) > 1e-9:
        assert quad_sign(q) == (1 if v > 0 else -1)


@given(quad, quad)
def test_quad_field_ops(p, q):
    assert quad_value(p * q) == pytest.approx(quad_value(p) * quad_value(q), abs=1e-6)
    assert (p + q) - q == p
    if q:
        assert (p / q) * q == p


@given(quad)
def test_quad_floor_and_sqrt(q):
    assert q.floor() == math.floor(quad_value(q)) or abs(quad_value(q) - round(quad_value(q))) < 1e-9
    sq = q * q
    root = sq.sqrt()
    assert root is not None and root == abs(q)


def test_quad_sqrt_absent():
    assert QuadExt(2).sqrt() is None
    assert QuadExt(-1).sqrt() is None
    assert QuadExt(Fraction(1, 3)).sqrt() == QuadExt(0, Fraction(1, 3))
