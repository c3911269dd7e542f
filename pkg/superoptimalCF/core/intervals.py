"""
Certified rational enclosures
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameter


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints and lo < hi"""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if not lo < hi:
            raise BadParameter(f"degenerate or inverted interval [{lo}, {hi}]")
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    @classmethod
    def from_ints(cls, lo_num, lo_den, hi_num, hi_den) -> 'RatInterval':
        return cls(Fraction(lo_num, lo_den), Fraction(hi_num, hi_den))

    @classmethod
    def around(cls, center, radius) -> 'RatInterval':
        center, radius = Fraction(center), Fraction(radius)
        return cls(center - radius, center + radius)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersect(self, other: 'RatInterval') -> 'RatInterval':
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def overlaps(self, other: 'RatInterval') -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def dyadic_hull(self, bits: int) -> 'RatInterval':
        """Smallest enclosing interval with endpoints on the 2^-bits grid"""
        scale = 1 << bits
        lo = (self.lo.numerator * scale) // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        if lo == hi:
            hi += 1
        return RatInterval(Fraction(lo, scale), Fraction(hi, scale))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"
