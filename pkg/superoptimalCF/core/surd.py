"""
Exact elements (a + b*sqrt(d))/c of a real quadratic field
Comparisons are decided on integers, never on floats
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

from mpmath import mp, mpf, sqrt as mp_sqrt

from .errors import MixedRadicands


class Ordering(Enum):
    """Result of an exact three-way comparison"""

    LESS = -1
    EQUAL = 0
    GREATER = 1


def _square_free(d: int) -> tuple[int, int]:
    """Split d = k^2 * f with f square-free; returns (k, f)"""
    k = 1
    f = d
    p = 2
    while p * p <= f:
        while f % (p * p) == 0:
            f //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, f


def sign_of_quadratic(a: int, b: int, d: int) -> int:
    """Sign of the real number a + b*sqrt(d) (d >= 0, integers)"""
    if b == 0 or d == 0:
        return (a > 0) - (a < 0)
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    lhs = a * a
    rhs = b * b * d
    if a > 0:
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


@total_ordering
@dataclass(frozen=True, eq=False)
class SurdValue:
    """
    The number (a + b*sqrt(d))/c in canonical form

    Canonical form: c > 0, gcd(a, b, c) = 1, d square-free, and b = d = 0 for
    rationals. Structural equality is therefore value equality.
    """

    a: int
    b: int = 0
    c: int = 1
    d: int = 0

    def __post_init__(self):
        a, b, c, d = int(self.a), int(self.b), int(self.c), int(self.d)
        if c == 0:
            raise ZeroDivisionError("SurdValue with zero denominator")
        if d < 0:
            raise ValueError(f"radicand must be non-negative, got {d}")
        if d > 1 and b != 0:
            k, d = _square_free(d)
            b *= k
        if d == 1:
            a, b = a + b, 0
        if b == 0 or d <= 1:
            b, d = 0, 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'c', c)
        object.__setattr__(self, 'd', d)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> 'SurdValue':
        value = Fraction(value)
        return cls(value.numerator, 0, value.denominator, 0)

    @classmethod
    def sqrt(cls, d: int) -> 'SurdValue':
        """sqrt(d) for a non-negative integer d"""
        return cls(0, 1, 1, d)

    @classmethod
    def coerce(cls, value) -> 'SurdValue':
        if isinstance(value, SurdValue):
            return value
        if isinstance(value, (int, Rational)):
            return cls.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to SurdValue")

    # -- inspection -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def sign(self) -> int:
        return sign_of_quadratic(self.a, self.b, self.d)

    def radicand_with(self, other: 'SurdValue') -> int:
        """Common radicand of two operands, or MixedRadicands"""
        if self.is_rational:
            return other.d
        if other.is_rational or other.d == self.d:
            return self.d
        raise MixedRadicands(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        try:
            other = SurdValue.coerce(other)
        except TypeError:
            return NotImplemented
        d = self.radicand_with(other)
        return SurdValue(self.a * other.c + other.a * self.c,
                         self.b * other.c + other.b * self.c,
                         self.c * other.c, d)

    __radd__ = __add__

    def __neg__(self):
        return SurdValue(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        try:
            other = SurdValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = SurdValue.coerce(other)
        except TypeError:
            return NotImplemented
        d = self.radicand_with(other)
        return SurdValue(self.a * other.a + self.b * other.b * d,
                         self.a * other.b + self.b * other.a,
                         self.c * other.c, d)

    __rmul__ = __mul__

    def conjugate(self) -> 'SurdValue':
        return SurdValue(self.a, -self.b, self.c, self.d)

    def reciprocal(self) -> 'SurdValue':
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return SurdValue(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        try:
            other = SurdValue.coerce(other)
        except TypeError:
            return NotImplemented
        self.radicand_with(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return SurdValue.coerce(other) * self.reciprocal()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Exact floor via integer square roots"""
        if self.is_rational:
            return self.a // self.c
        root = math.isqrt(self.b * self.b * self.d)
        m = root if self.b > 0 else -root - 1
        return (self.a + m) // self.c

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        try:
            other = SurdValue.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __lt__(self, other):
        try:
            other = SurdValue.coerce(other)
        except TypeError:
            return NotImplemented
        return surd_compare(self, other) is Ordering.LESS

    def __hash__(self):
        if self.is_rational:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    # -- conversion -------------------------------------------------------

    def to_mpf(self):
        """High-precision value at the current mpmath precision"""
        value = mpf(self.a)
        if self.b:
            value += mpf(self.b) * mp_sqrt(self.d)
        return value / self.c

    def __float__(self):
        with mp.workdps(30):
            return float(self.to_mpf())

    def __str__(self):
        if self.is_rational:
            return str(Fraction(self.a, self.c))
        coeff = Fraction(self.b, self.c)
        root = f"sqrt({self.d})"
        if coeff == 1:
            irrational = root
        elif coeff == -1:
            irrational = f"-{root}"
        else:
            irrational = f"{coeff}*{root}"
        if self.a == 0:
            return irrational
        rational = Fraction(self.a, self.c)
        if irrational.startswith('-'):
            return f"{rational} - {irrational[1:]}"
        return f"{rational} + {irrational}"


def surd_compare(u, v) -> Ordering:
    """
    Exact ordering of two surds

    Args:
        u, v: SurdValue (or rationals) over the same radicand, or either rational

    Returns:
        Ordering: LESS, EQUAL or GREATER

    Raises:
        MixedRadicands: if the radicands differ and neither value is rational
    """
    u = SurdValue.coerce(u)
    v = SurdValue.coerce(v)
    d = u.radicand_with(v)
    # sign of u - v with u = (a1 + b1 r)/c1, v = (a2 + b2 r)/c2, both c > 0
    a = u.a * v.c - v.a * u.c
    b = u.b * v.c - v.b * u.c
    return Ordering(sign_of_quadratic(a, b, d))


ONE_OVER_SQRT5 = SurdValue(0, 1, 5, 5)
GOLDEN_RATIO = SurdValue(1, 1, 2, 5)
