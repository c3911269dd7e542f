"""
2x2 integer matrices and their Möbius action
Layout is [[r, p], [s, q]], matching the continuant blocks M_[m,n]
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameter, PoleInInterval
from .intervals import RatInterval
from .surd import SurdValue


@dataclass(frozen=True)
class IntMatrix2:
    """Immutable 2x2 matrix of arbitrary-precision integers"""

    r: int
    p: int
    s: int
    q: int

    @classmethod
    def identity(cls) -> 'IntMatrix2':
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.r * self.q - self.p * self.s

    def __matmul__(self, other: 'IntMatrix2') -> 'IntMatrix2':
        return IntMatrix2(
            self.r * other.r + self.p * other.s,
            self.r * other.p + self.p * other.q,
            self.s * other.r + self.q * other.s,
            self.s * other.p + self.q * other.q,
        )

    def times_digit(self, a: int) -> 'IntMatrix2':
        """Right multiplication by [[0, 1], [1, a]] without a general product"""
        return IntMatrix2(self.p, self.r + a * self.p, self.q, self.s + a * self.q)

    def transpose(self) -> 'IntMatrix2':
        return IntMatrix2(self.r, self.s, self.p, self.q)

    def adjugate(self) -> 'IntMatrix2':
        return IntMatrix2(self.q, -self.p, -self.s, self.r)

    def inverse(self) -> 'IntMatrix2':
        """Exact inverse; only unimodular matrices have one over the integers"""
        det = self.det
        if det not in (1, -1):
            raise BadParameter(f"matrix with determinant {det} is not invertible over Z")
        adj = self.adjugate()
        return IntMatrix2(det * adj.r, det * adj.p, det * adj.s, det * adj.q)

    def power(self, n: int) -> 'IntMatrix2':
        if n < 0:
            return self.inverse().power(-n)
        result = IntMatrix2.identity()
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def rows(self):
        return [[self.r, self.p], [self.s, self.q]]

    def __str__(self):
        return f"[[{self.r}, {self.p}], [{self.s}, {self.q}]]"


def digit_matrix(a: int) -> IntMatrix2:
    """M(x) = [[0, 1], [1, a]] for the digit a = floor(1/x)"""
    return IntMatrix2(0, 1, 1, a)


def mat_mul(a: IntMatrix2, b: IntMatrix2) -> IntMatrix2:
    return a @ b


def product_of_digits(digits) -> IntMatrix2:
    result = IntMatrix2.identity()
    for a in digits:
        result = result.times_digit(a)
    return result


def fibonacci_matrix(n: int, a: int) -> IntMatrix2:
    """[[0,1],[1,1]]^n [[0,1],[1,a]] = [[F_n, aF_n+F_{n-1}], [F_{n+1}, aF_{n+1}+F_n]]"""
    f_prev, f_cur = 1, 0  # F_{-1}, F_0
    for _ in range(n):
        f_prev, f_cur = f_cur, f_prev + f_cur
    f_next = f_prev + f_cur
    return IntMatrix2(f_cur, a * f_cur + f_prev, f_next, a * f_next + f_cur)


def _apply_point(m: IntMatrix2, t: Fraction) -> Fraction:
    den = m.s * t + m.q
    if den == 0:
        raise PoleInInterval(f"{m} has a pole at {t}")
    return (m.r * t + m.p) / den


def mobius_apply(m: IntMatrix2, t):
    """
    Apply M as the Möbius map t -> (r t + p)/(s t + q)

    Args:
        m: IntMatrix2
        t: Fraction/int, RatInterval or SurdValue

    Returns:
        Same kind as t; intervals map to their exact image interval

    Raises:
        PoleInInterval: if s t + q vanishes on the input
    """
    if isinstance(t, RatInterval):
        den_lo = m.s * t.lo + m.q
        den_hi = m.s * t.hi + m.q
        if den_lo == 0 or den_hi == 0 or (den_lo > 0) != (den_hi > 0):
            raise PoleInInterval(f"{m} has a pole inside {t}")
        a = (m.r * t.lo + m.p) / den_lo
        b = (m.r * t.hi + m.p) / den_hi
        return RatInterval(min(a, b), max(a, b))
    if isinstance(t, SurdValue):
        den = m.s * t + m.q
        if den.sign() == 0:
            raise PoleInInterval(f"{m} has a pole at {t}")
        return (m.r * t + m.p) / den
    return _apply_point(m, Fraction(t))
