"""
The natural extension of the Gauss map and its induced map on a region
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .errors import BadParameter, NeverHitsWithinCap, PrecisionExhausted
from .intervals import RatInterval
from .matrix import IntMatrix2, product_of_digits
from .regions import Region, contains
from .surd import SurdValue
from .tail_source import TailHandle, TailSource
from ..config.settings import Settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NEPoint:
    """
    z_n = (x_n, y_n) at depth n of a natural-extension orbit

    y is kept as an integer pair; from z_0 = (x, 0) it is q_{n-1}/q_n and
    stays in lowest terms.
    """

    x_tail: TailHandle
    y_num: int
    y_den: int

    @property
    def depth(self) -> int:
        return self.x_tail.depth

    @property
    def source(self) -> TailSource:
        return self.x_tail.source

    @property
    def y(self) -> Fraction:
        return Fraction(self.y_num, self.y_den)


def start_point(src: TailSource, y=0) -> NEPoint:
    """z_0 = (x, y) at the source's depth 0"""
    y = Fraction(y)
    if not 0 <= y <= 1:
        raise BadParameter(f"y must lie in [0, 1], got {y}")
    return NEPoint(TailHandle(src, 0), y.numerator, y.denominator)


def ne_step(z: NEPoint) -> NEPoint:
    """(x, y) -> (1/x - a, 1/(a + y)) with a = floor(1/x)"""
    a = z.source.digit(z.depth + 1)
    return NEPoint(TailHandle(z.source, z.depth + 1), z.y_den, a * z.y_den + z.y_num)


def g_value(z: NEPoint) -> Union[SurdValue, RatInterval]:
    """
    g(z) = y/(1 + x y)

    Exact for surd tails and for y = 0, else an enclosure (g decreases in x).
    """
    y = z.y
    if y == 0:
        return SurdValue(0)
    exact = z.x_tail.exact()
    if exact is not None:
        return y / (1 + exact * y)
    try:
        x = z.x_tail.enclosure(Settings.THETA_WIDTH)
    except PrecisionExhausted:
        x = z.x_tail.available_enclosure()
    return RatInterval(y / (1 + x.hi * y), y / (1 + x.lo * y))


@dataclass(frozen=True)
class InducedStep:
    """One application of the induced map: j digits consumed from z_start"""

    j: int
    M_delta: IntMatrix2
    z_start: NEPoint
    z_next: NEPoint
    word: Tuple[int, ...]

    @property
    def r(self) -> int:
        return self.M_delta.r

    @property
    def p(self) -> int:
        return self.M_delta.p

    @property
    def s(self) -> int:
        return self.M_delta.s

    @property
    def q(self) -> int:
        return self.M_delta.q


def hitting_time(region: Region, z: NEPoint, cap: int = None) -> int:
    """Smallest 1 <= j <= cap with G^j(z) in the region"""
    return _hit(region, z, cap)[0]


def _hit(region: Region, z: NEPoint, cap):
    cap = Settings.DEFAULT_CAP if cap is None else cap
    if cap < 1:
        raise BadParameter(f"cap must be >= 1, got {cap}")
    current = z
    for j in range(1, cap + 1):
        current = ne_step(current)
        if contains(region, current):
            return j, current
    raise NeverHitsWithinCap(
        f"orbit from depth {z.depth} never enters {region.label} within {cap} steps",
        cap=cap, depth=z.depth)


def induced_step(region: Region, z: NEPoint, cap: int = None) -> InducedStep:
    """
    z -> G_Delta(z) = (M_Delta^-1 x, M_Delta^T y)

    Raises:
        NeverHitsWithinCap: the orbit stays outside the region for cap steps
    """
    j, z_next = _hit(region, z, cap)
    word = z.source.digit_slice(z.depth, z.depth + j)
    step = InducedStep(j, product_of_digits(word), z, z_next, tuple(word))
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"induced step at depth {z.depth}: j={j} word={word[:8]}")
    return step
