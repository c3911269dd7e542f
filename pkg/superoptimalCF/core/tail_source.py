"""
Regular continued fraction digit sources with certified tail enclosures
A source is a cursor: it owns the consumed digits and the cumulative matrix M_[1,n]
"""
from __future__ import annotations

import copy
import logging
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np

from .errors import (BadParameter, ParseError, PrecisionExhausted, RationalInput,
                     SourceExhausted)
from .expr import parse_surd
from .intervals import RatInterval
from .matrix import IntMatrix2, mobius_apply
from .surd import SurdValue
from ..config.settings import Settings

logger = logging.getLogger(__name__)

Enclosure = Union[SurdValue, RatInterval]


@dataclass(frozen=True)
class ConvergentPair:
    """The RCF convergent p_n/q_n, always in lowest terms"""

    p: int
    q: int
    n: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


class TailSource(ABC):
    """
    Base class for digit sources of an irrational x in (0, 1)

    Subclasses decide the next digit from the tail x_n = G^n(x) and report
    certified enclosures of tails. Convergent history is kept unless
    keep_history is False (statistics only need the last two convergents).
    """

    kind = 'abstract'

    def __init__(self, label: str = '', keep_history: bool = True):
        self.label = label
        self._digits: List[int] = []
        self._matrix = IntMatrix2.identity()
        self._history: Optional[List[Tuple[int, int]]] = [(1, 0), (0, 1)] if keep_history else None

    # -- cursor -----------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self._digits)

    @property
    def digits(self) -> Tuple[int, ...]:
        return tuple(self._digits)

    def digit_slice(self, start: int, stop: int) -> Tuple[int, ...]:
        """(a_{start+1}, ..., a_stop) without copying the whole history"""
        self.advance_to(stop)
        return tuple(self._digits[start:stop])

    @property
    def matrix(self) -> IntMatrix2:
        """M_[1,n] = [[p_{n-1}, p_n], [q_{n-1}, q_n]] at the current depth"""
        return self._matrix

    def next_digit(self) -> int:
        """Decide a_{n+1}, advance the cursor and return the digit"""
        a = self._decide_digit()
        self._digits.append(a)
        self._matrix = self._matrix.times_digit(a)
        if self._history is not None:
            self._history.append((self._matrix.p, self._matrix.q))
        return a

    def advance_to(self, n: int):
        while self.depth < n:
            self.next_digit()

    def digit(self, i: int) -> int:
        """a_i (1-based), advancing the cursor if needed"""
        if i < 1:
            raise BadParameter(f"digit index must be >= 1, got {i}")
        self.advance_to(i)
        return self._digits[i - 1]

    def fork(self) -> 'TailSource':
        """Independent cursor at the same depth"""
        clone = copy.copy(self)
        clone._digits = list(self._digits)
        if self._history is not None:
            clone._history = list(self._history)
        return clone

    # -- convergents ------------------------------------------------------

    def _pair(self, n: int) -> Tuple[int, int]:
        if n < -1:
            raise BadParameter(f"convergent index must be >= -1, got {n}")
        self.advance_to(n)
        if self._history is not None:
            return self._history[n + 1]
        if n == self.depth:
            return self._matrix.p, self._matrix.q
        if n == self.depth - 1:
            return self._matrix.r, self._matrix.s
        raise BadParameter(f"convergent {n} was discarded (source keeps no history)")

    def p(self, n: int) -> int:
        return self._pair(n)[0]

    def q(self, n: int) -> int:
        return self._pair(n)[1]

    def convergent(self, n: int) -> ConvergentPair:
        p, q = self._pair(n)
        return ConvergentPair(p, q, n)

    # -- tails ------------------------------------------------------------

    def exact_tail(self, n: int) -> Optional[SurdValue]:
        """x_n as an exact surd, or None when the backend has no exact tails"""
        return None

    @abstractmethod
    def _decide_digit(self) -> int:
        """Digit a_{depth+1}; must not touch the cursor"""

    @abstractmethod
    def tail_enclosure(self, n: int, width) -> RatInterval:
        """Interval of width <= width containing x_n and excluding 0"""

    def available_enclosure(self, n: int) -> RatInterval:
        """The tightest enclosure of x_n the source can certify"""
        return self.tail_enclosure(n, Settings.THETA_WIDTH)

    def __repr__(self):
        return f"{type(self).__name__}({self.label!r}, depth={self.depth})"


class QuadraticSurdTail(TailSource):
    """Exact tails of a quadratic irrational; digits are eventually periodic"""

    kind = 'surd'

    def __init__(self, value, label: str = '', keep_history: bool = True):
        value = SurdValue.coerce(value)
        if value.is_rational:
            raise RationalInput(f"{value} is rational; its expansion terminates")
        if not 0 < value < 1:
            raise BadParameter(f"x must lie in (0, 1), got {value}")
        super().__init__(label or str(value), keep_history)
        self.value = value
        # tails and digits are deterministic, so forks share them
        self._tails: List[SurdValue] = [value]
        self._known: List[int] = []

    def _decide_digit(self) -> int:
        n = self.depth
        while len(self._known) <= n:
            x = self._tails[len(self._known)]
            inverse = x.reciprocal()
            a = inverse.floor()
            self._known.append(a)
            self._tails.append(inverse - a)
        return self._known[n]

    def exact_tail(self, n: int) -> SurdValue:
        self.advance_to(n)
        return self._tails[n]

    def tail_enclosure(self, n: int, width) -> RatInterval:
        width = Fraction(width)
        if width <= 0:
            raise BadParameter("enclosure width must be positive")
        x = self.exact_tail(n)
        bits = 0
        while Fraction(1, 1 << bits) > width:
            bits += 1
        while True:
            scale = 1 << bits
            lo = (x * scale).floor()
            if lo > 0:
                return RatInterval(Fraction(lo, scale), Fraction(lo + 1, scale))
            bits += 1


class _DigitBuffer:
    """Lazily materialised digit stream shared by forked cursors"""

    def __init__(self, digits: Iterable[int]):
        self._iterator: Optional[Iterator[int]] = iter(digits)
        self._items: List[int] = []

    def get(self, index: int) -> Optional[int]:
        while len(self._items) <= index and self._iterator is not None:
            try:
                value = next(self._iterator)
            except StopIteration:
                self._iterator = None
                break
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise BadParameter(f"continued fraction digits must be positive integers, got {value!r}")
            self._items.append(int(value))
        return self._items[index] if index < len(self._items) else None

    def available(self) -> int:
        return len(self._items)


class ExplicitDigitsTail(TailSource):
    """
    A given (possibly infinite) digit stream

    Tail enclosures come from lookahead: x_n lies between p/q and (p+p')/(q+q')
    for the block of digits after position n.
    """

    kind = 'digits'

    def __init__(self, digits: Iterable[int], label: str = '', keep_history: bool = True):
        super().__init__(label or 'digits', keep_history)
        self._buffer = _DigitBuffer(digits)

    def _decide_digit(self) -> int:
        a = self._buffer.get(self.depth)
        if a is None:
            raise SourceExhausted(f"digit list ended after {self.depth} digits")
        return a

    def _lookahead(self, n: int, width: Optional[Fraction]) -> RatInterval:
        block = IntMatrix2.identity()
        index = n
        while True:
            a = self._buffer.get(index)
            if a is None:
                if index == n:
                    raise PrecisionExhausted(f"no digits after position {n} to enclose x_{n}")
                if width is None:
                    break
                raise PrecisionExhausted(
                    f"digit list ended before x_{n} could be enclosed to width {width}")
            block = block.times_digit(a)
            index += 1
            if width is not None and Fraction(1, block.q * (block.q + block.s)) <= width:
                break
        ends = (Fraction(block.p, block.q), Fraction(block.p + block.r, block.q + block.s))
        return RatInterval(min(ends), max(ends))

    def tail_enclosure(self, n: int, width) -> RatInterval:
        width = Fraction(width)
        if width <= 0:
            raise BadParameter("enclosure width must be positive")
        return self._lookahead(n, width)

    def available_enclosure(self, n: int) -> RatInterval:
        try:
            return self._lookahead(n, Settings.THETA_WIDTH)
        except PrecisionExhausted:
            return self._lookahead(n, None)


class IntervalTail(TailSource):
    """
    An irrational known only through a rational enclosure (lo, hi)

    The current tail enclosure is carried as unreduced integer pairs and
    advanced by Euclid steps, so no gcd is ever taken on the hot path.
    A digit is emitted only when the whole enclosure agrees on it.
    """

    kind = 'interval'

    def __init__(self, interval: RatInterval, label: str = '', keep_history: bool = True):
        if interval.hi <= 0 or interval.lo >= 1:
            raise BadParameter(f"enclosure {interval} does not meet (0, 1)")
        super().__init__(label or str(interval), keep_history)
        lo = max(interval.lo, Fraction(0))
        hi = min(interval.hi, Fraction(1))
        self._origin = (lo.numerator, lo.denominator, hi.numerator, hi.denominator)
        self._current = self._origin

    @classmethod
    def dyadic(cls, numerator: int, bits: int, **kwargs) -> 'IntervalTail':
        """Centre numerator/2^bits with radius 2^-bits"""
        scale = 1 << bits
        return cls(RatInterval(Fraction(numerator - 1, scale), Fraction(numerator + 1, scale)), **kwargs)

    @staticmethod
    def _euclid_step(pair, a):
        ln, ld, hn, hd = pair
        return hd - a * hn, hn, ld - a * ln, ln

    def _decide_digit(self) -> int:
        ln, ld, hn, hd = self._current
        if ln <= 0:
            raise PrecisionExhausted(f"enclosure of x_{self.depth} reaches 0; digit {self.depth + 1} undecidable")
        a = hd // hn
        if ld > (a + 1) * ln:
            raise PrecisionExhausted(f"enclosure of x_{self.depth} straddles a digit boundary")
        self._current = self._euclid_step(self._current, a)
        return a

    def _pair_at(self, n: int):
        self.advance_to(n)
        if n == self.depth:
            return self._current
        pair = self._origin
        for a in self._digits[:n]:
            pair = self._euclid_step(pair, a)
        return pair

    def available_enclosure(self, n: int) -> RatInterval:
        ln, ld, hn, hd = self._pair_at(n)
        if ln <= 0:
            raise PrecisionExhausted(f"enclosure of x_{n} does not exclude 0")
        return RatInterval(Fraction(ln, ld), Fraction(hn, hd))

    def tail_enclosure(self, n: int, width) -> RatInterval:
        width = Fraction(width)
        if width <= 0:
            raise BadParameter("enclosure width must be positive")
        ln, ld, hn, hd = self._pair_at(n)
        if ln <= 0:
            raise PrecisionExhausted(f"enclosure of x_{n} does not exclude 0")
        # native width (hn ld - ln hd)/(hd ld) against the request, on integers
        if (hn * ld - ln * hd) * width.denominator > width.numerator * hd * ld:
            raise PrecisionExhausted(f"x_{n} is only known to a width wider than {width}")
        bits = width.denominator.bit_length() - width.numerator.bit_length() + 3
        scale = 1 << bits
        lo = (ln * scale) // ld
        hi = -((-hn * scale) // hd)
        if lo > 0 and Fraction(hi - lo, scale) <= width:
            return RatInterval(Fraction(lo, scale), Fraction(hi, scale))
        return RatInterval(Fraction(ln, ld), Fraction(hn, hd))


_DECIMAL = re.compile(r"^([+-]?)(\d*)\.(\d+)(?:\.\.\.)?$")   # optional trailing "..." marks truncation


def parse_decimal(text: str) -> Tuple[Fraction, int]:
    """
    Parse "0.14159..." (whitespace ignored) into (value, fractional digit count)

    Raises:
        ParseError: if the text is not a plain decimal
    """
    compact = ''.join(text.split())
    match = _DECIMAL.match(compact)
    if not match:
        raise ParseError(f"not a decimal string: {text[:40]!r}")
    sign, whole, frac = match.groups()
    k = len(frac)
    value = Fraction(int((whole or '0') + frac), 10 ** k)
    return (-value if sign == '-' else value), k


class DecimalTail(IntervalTail):
    """
    x given by k decimal digits; |x - d| <= 10^-(k - guard)

    The radius covers both truncated and rounded inputs. Decimals never
    extend beyond the digits provided.
    """

    kind = 'decimal'

    def __init__(self, text: str, guard: int = 0, label: str = '', keep_history: bool = True):
        value, k = parse_decimal(text)
        if guard < 0 or guard >= k:
            raise BadParameter(f"guard must lie in [0, {k}), got {guard}")
        if not 0 < value < 1:
            raise BadParameter(f"x must lie in (0, 1), got {float(value)}")
        self.decimal_digits = k
        radius = Fraction(1, 10 ** (k - guard))
        super().__init__(RatInterval.around(value, radius),
                         label=label or f"decimal[{k}]", keep_history=keep_history)


@dataclass(frozen=True)
class TailHandle:
    """A tail x_n addressed by (source, depth)"""

    source: TailSource
    depth: int

    def exact(self) -> Optional[SurdValue]:
        return self.source.exact_tail(self.depth)

    def enclosure(self, width) -> RatInterval:
        return self.source.tail_enclosure(self.depth, width)

    def available_enclosure(self) -> RatInterval:
        return self.source.available_enclosure(self.depth)


# -- module-level operations ----------------------------------------------

def next_digit(src: TailSource) -> int:
    return src.next_digit()


def convergents(src: TailSource, count: int) -> List[ConvergentPair]:
    """p_1/q_1 ... p_count/q_count"""
    src.advance_to(count)
    return [src.convergent(n) for n in range(1, count + 1)]


def tail_enclosure(src: TailSource, n: int, width) -> RatInterval:
    return src.tail_enclosure(n, width)


def theta(src: TailSource, n: int) -> Enclosure:
    """
    Θ(x, p_{n-1}/q_{n-1}) = q_{n-1}/(q_{n-1} x_n + q_n)

    Args:
        src: digit source, advanced to depth n if necessary
        n: depth >= 1

    Returns:
        SurdValue for quadratic sources, otherwise a certified RatInterval
    """
    if n < 1:
        raise BadParameter(f"theta needs depth n >= 1, got {n}")
    src.advance_to(n)
    q_prev, q_n = src.q(n - 1), src.q(n)
    m = IntMatrix2(0, q_prev, q_prev, q_n)
    exact = src.exact_tail(n)
    if exact is not None:
        return mobius_apply(m, exact)
    try:
        enclosure = src.tail_enclosure(n, Settings.THETA_WIDTH)
    except PrecisionExhausted:
        enclosure = src.available_enclosure(n)
    return mobius_apply(m, enclosure)


def approximation_coefficient(src: TailSource, p: int, q: int) -> Enclosure:
    """q^2 |x - p/q| evaluated directly on x = x_0"""
    if q < 1:
        raise BadParameter(f"denominator must be positive, got {q}")
    exact = src.exact_tail(0)
    if exact is not None:
        return abs(q * q * exact - p * q)
    try:
        x = src.tail_enclosure(0, Settings.THETA_WIDTH / (q * q))
    except PrecisionExhausted:
        x = src.available_enclosure(0)
    lo, hi = q * q * x.lo - p * q, q * q * x.hi - p * q
    if lo <= 0 <= hi:
        raise PrecisionExhausted(f"x is not separated from {p}/{q} by its enclosure")
    return RatInterval(lo, hi) if lo > 0 else RatInterval(-hi, -lo)


def parse_digit_list(text: str) -> List[int]:
    """"7,15,1,292" -> [7, 15, 1, 292]"""
    parts = [part.strip() for part in re.split(r"[,\s]+", text.strip()) if part.strip()]
    if not parts:
        raise ParseError("empty digit list")
    digits = []
    for part in parts:
        if not part.isdigit() or int(part) < 1:
            raise ParseError(f"digit {part!r} is not a positive integer")
        digits.append(int(part))
    return digits


def _gauss_kuzmin_digits(rng: np.random.Generator, chunk: int = 256) -> Iterator[int]:
    # inverse CDF of P(a <= k) = 1 - log2(1 + 1/(k+1))
    while True:
        for v in rng.random(chunk):
            denom = 2.0 ** (1.0 - v) - 1.0
            if denom <= 0.0:
                continue
            yield max(1, math.ceil(1.0 / denom) - 1)


def random_digit_stream(seed: int, keep_history: bool = True) -> ExplicitDigitsTail:
    """Endless i.i.d. Gauss-Kuzmin digits from a seeded numpy generator"""
    rng = np.random.default_rng(seed)
    return ExplicitDigitsTail(_gauss_kuzmin_digits(rng), label=f"random-digits({seed})",
                              keep_history=keep_history)


def random_interval_tail(rng: np.random.Generator, bits: int, keep_history: bool = False) -> IntervalTail:
    """Uniform dyadic draw N/2^bits with radius 2^-bits"""
    nbytes = (bits + 7) // 8
    numerator = int.from_bytes(rng.bytes(nbytes), 'big') >> (8 * nbytes - bits)
    numerator = min(max(numerator, 2), (1 << bits) - 2)
    return IntervalTail.dyadic(numerator, bits, label=f"dyadic[{bits}]", keep_history=keep_history)


def tail_source_from_spec(kind: str, value: str, guard: int = 0) -> TailSource:
    """
    Build a source from a CLI-style input description

    Args:
        kind: 'surd', 'decimal', 'decimal_file', 'fixture' or 'digits'
        value: expression, decimal text, path, fixture name or digit list
        guard: decimal digits to distrust at the end of decimal input
    """
    from ..config.fixtures import load_fixture
    from ..utils.file_handler import FileHandler

    if kind == 'surd':
        return QuadraticSurdTail(parse_surd(value), label=value)
    if kind == 'decimal':
        return DecimalTail(value, guard=guard)
    if kind == 'decimal_file':
        return DecimalTail(FileHandler.read_text(value), guard=guard, label=str(value))
    if kind == 'fixture':
        return DecimalTail(load_fixture(value), guard=guard, label=f"fixture:{value}")
    if kind == 'digits':
        return ExplicitDigitsTail(parse_digit_list(value), label=value)
    raise BadParameter(f"unknown input kind {kind!r}")
