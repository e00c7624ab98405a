"""Exact arithmetic in Z[g], g = exp(i*pi/6), and in the real field Q(sqrt 3).

Elements of Z[g] are stored in the integral basis 1, g, g^2, g^3 and reduced
with the minimal-polynomial relation g^4 = g^2 - 1.  Real and imaginary parts
of such elements live in Q(sqrt 3), represented by :class:`QuadExt`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]

SQRT3 = math.sqrt(3.0)
G_COMPLEX = cmath.exp(1j * math.pi / 6)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@total_ordering
class QuadExt:
    """The real number a + b*sqrt(3) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational | str = 0, b: Rational | str = 0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return cls(x, 0)

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt3"

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT3

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def _other(self, other):
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other)
        return None

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        """Galois conjugate a - b*sqrt(3)."""
        return QuadExt(self.a, -self.b)

    def field_norm(self) -> Fraction:
        return self.a * self.a - 3 * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.field_norm()
        if n == 0:
            # the norm form has no nontrivial rational zeros
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def sign(self) -> int:
        return quad_sign(self)

    def floor(self) -> int:
        f = math.floor(float(self))
        while self < f:
            f -= 1
        while self >= f + 1:
            f += 1
        return f

    def round(self) -> int:
        return (self + Fraction(1, 2)).floor()

    def sqrt(self) -> "QuadExt | None":
        """Exact square root inside Q(sqrt 3), or None when it does not exist."""
        s = self.sign()
        if s < 0:
            return None
        if s == 0:
            return QuadExt(0)
        # (x + y r)^2 = x^2 + 3y^2 + 2xy r, solved through x^2 as a root of
        # X^2 - a X + 3 b^2 / 4 = 0
        a, b = self.a, self.b
        disc = a * a - 3 * b * b
        rd = _rational_sqrt(disc)
        if rd is None:
            return None
        for x2 in ((a + rd) / 2, (a - rd) / 2):
            x = _rational_sqrt(x2)
            if x is None:
                continue
            if x == 0:
                y2 = a / 3
                y = _rational_sqrt(y2)
                if y is not None and b == 0:
                    return QuadExt(0, y)
                continue
            y = b / (2 * x)
            cand = QuadExt(x, y)
            if cand * cand == self:
                return cand if cand.sign() >= 0 else -cand
        return None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def quad_sign(q: QuadExt) -> int:
    """Exact sign of a + b*sqrt(3).

    Case table on (sign a, sign b):
      a >= 0, b >= 0  -> sign of a + |b| (0 only when both vanish)
      a <= 0, b <= 0  -> negative unless both vanish
      a > 0,  b < 0   -> +1 iff a^2 > 3 b^2
      a < 0,  b > 0   -> +1 iff 3 b^2 > a^2
    a^2 == 3 b^2 with b != 0 is impossible over Q.
    """
    a, b = q.a, q.b
    if a >= 0 and b >= 0:
        return 0 if (a == 0 and b == 0) else 1
    if a <= 0 and b <= 0:
        return -1
    lhs, rhs = a * a, 3 * b * b
    if a > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


# Re and Im of g^k for k = 0..3, as (rational part, sqrt3 part)
_RE = (QuadExt(1), QuadExt(0, Fraction(1, 2)), QuadExt(Fraction(1, 2)), QuadExt(0))
_IM = (QuadExt(0), QuadExt(Fraction(1, 2)), QuadExt(0, Fraction(1, 2)), QuadExt(1))


@dataclass(frozen=True)
class CycloInt:
    """c0 + c1 g + c2 g^2 + c3 g^3 in Z[g], g a primitive 12th root of unity."""

    c0: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    @classmethod
    def from_seq(cls, seq) -> "CycloInt":
        c = [int(x) for x in seq]
        if len(c) != 4:
            raise ValueError("CycloInt needs exactly 4 coefficients")
        return cls(*c)

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloInt(other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        return CycloInt(*(x + y for x, y in zip(self, other)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycloInt(other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloInt(*(other * x for x in self))
        if not isinstance(other, CycloInt):
            return NotImplemented
        return cyclo_mul(self, other)

    __rmul__ = __mul__

    def conj(self) -> "CycloInt":
        # g -> g^-1 = g - g^3, g^2 -> g^-2 = 1 - g^2, g^3 -> -g^3
        c0, c1, c2, c3 = self
        return CycloInt(c0 + c2, c1, -c2, -c1 - c3)

    def lambda1(self) -> "CycloInt":
        """Component in Z[g^2] (even powers)."""
        return CycloInt(self.c0, 0, self.c2, 0)

    def lambda2(self) -> "CycloInt":
        """Component in g Z[g^2] (odd powers)."""
        return CycloInt(0, self.c1, 0, self.c3)

    def re_im(self) -> tuple[QuadExt, QuadExt]:
        return re_im(self)

    def norm_sq(self) -> QuadExt:
        return norm_sq(self)

    def __complex__(self) -> complex:
        return sum((c * G_COMPLEX**k for k, c in enumerate(self)), 0j)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def cyclo_mul(x: CycloInt, y: CycloInt) -> CycloInt:
    prod = [0] * 7
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                prod[i + j] += a * b
    # top-down reduction with g^k = g^(k-2) - g^(k-4)
    for k in range(6, 3, -1):
        c = prod[k]
        if c:
            prod[k - 2] += c
            prod[k - 4] -= c
            prod[k] = 0
    return CycloInt(*prod[:4])


_POWERS: list[CycloInt] = []


def _build_powers() -> None:
    g = CycloInt(0, 1, 0, 0)
    p = CycloInt(1)
    for _ in range(12):
        _POWERS.append(p)
        p = cyclo_mul(p, g)


_build_powers()


def cyclo_power(k: int) -> CycloInt:
    """g^k for any integer k."""
    return _POWERS[k % 12]


def power_index(x: CycloInt) -> int | None:
    """k with x == g^k, or None when x is not a twelfth root of unity."""
    try:
        return _POWERS.index(x)
    except ValueError:
        return None


def re_im(x: CycloInt) -> tuple[QuadExt, QuadExt]:
    re = QuadExt(0)
    im = QuadExt(0)
    for c, r, i in zip(x, _RE, _IM):
        if c:
            re = re + c * r
            im = im + c * i
    return re, im


def norm_sq(x: CycloInt) -> QuadExt:
    re, im = re_im(x)
    return re * re + im * im


G = cyclo_power(1)
G_DELTA = cyclo_power(2)
G_SQUARE = cyclo_power(3)
