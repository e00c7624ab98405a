"""Exact density bookkeeping for strip packings and square-triangle tori."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..cyclotomic import QuadExt, quad_sign
from ..errors import TheoremViolation


def strip_density(a: int, c: int, n1: int, n2: int) -> Fraction:
    """delta / delta_triangular for an (a, *, c) strip packing on the triangular
    torus indexed by (n1, n2); checks it stays below n / (n + 1)."""
    if a < 0 or c < 1:
        raise ValueError("need a >= 0 and c >= 1")
    N = n1 * n1 + n1 * n2 + n2 * n2
    ratio = Fraction((a + 1) * N, c)
    n = c * (a + 1)
    if not ratio < Fraction(n, n + 1):
        raise TheoremViolation(f"density ratio {ratio} is not below {n}/{n + 1}")
    return ratio


@dataclass(frozen=True)
class SquareTriangleCensus:
    a: int
    b: int
    s: QuadExt
    f3: int
    f4: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.f4, self.f3)


def square_triangle_census(a: int, b: int) -> SquareTriangleCensus:
    """Face counts of a square-triangle tiling of the square torus of side a + b sqrt 3."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    f3, f4 = 8 * a * b, a * a + 3 * b * b
    # f4/f3 - sqrt(3)/4 > 0, decided exactly
    if quad_sign(QuadExt(Fraction(f4, f3), Fraction(-1, 4))) <= 0:
        raise TheoremViolation(f"f4/f3 = {f4}/{f3} does not exceed sqrt(3)/4")
    return SquareTriangleCensus(a, b, QuadExt(a, b), f3, f4)
