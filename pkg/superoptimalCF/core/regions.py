"""
Regions of Omega = [0,1) x [0,1] built from bilinear sign constraints
Membership of natural-extension points, the invariant measure, and the
cell structure of the jump and Hurwitz regions
"""
from __future__ import annotations

import heapq
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from .errors import (BadParameter, MixedRadicands, PrecisionExhausted,
                     UndecidableAtBudget)
from .intervals import RatInterval
from .matrix import IntMatrix2, fibonacci_matrix, mobius_apply
from .surd import ONE_OVER_SQRT5, SurdValue, sign_of_quadratic, surd_compare, Ordering
from ..config.settings import Settings

logger = logging.getLogger(__name__)

RELATIONS = ('<', '<=', '>', '>=')
_NEGATION = {'<': '>=', '<=': '>', '>': '<=', '>=': '<'}


@dataclass(frozen=True)
class BilinearConstraint:
    """
    c0 + c1*x + c2*y + c3*x*y  REL  0

    Coefficients share one radicand d. They are also kept as integers
    (A_i + B_i sqrt(d))/L so signs reduce to sign_of_quadratic.
    """

    c0: SurdValue
    c1: SurdValue
    c2: SurdValue
    c3: SurdValue
    relation: str
    _ints: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise BadParameter(f"unknown relation {self.relation!r}")
        coeffs = [SurdValue.coerce(c) for c in (self.c0, self.c1, self.c2, self.c3)]
        for name, value in zip(('c0', 'c1', 'c2', 'c3'), coeffs):
            object.__setattr__(self, name, value)
        radicands = {c.d for c in coeffs if not c.is_rational}
        if len(radicands) > 1:
            raise MixedRadicands(f"constraint mixes radicands {sorted(radicands)}")
        d = radicands.pop() if radicands else 0
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.c // math.gcd(lcm, c.c)
        a_part = tuple(c.a * (lcm // c.c) for c in coeffs)
        b_part = tuple(c.b * (lcm // c.c) for c in coeffs)
        object.__setattr__(self, '_ints', (a_part, b_part, d))

    @property
    def radicand(self) -> int:
        return self._ints[2]

    @property
    def depends_on_x(self) -> bool:
        (a0, a1, a2, a3), (b0, b1, b2, b3), _ = self._ints
        return any((a1, a3, b1, b3))

    def holds(self, sign: int) -> bool:
        if self.relation == '<':
            return sign < 0
        if self.relation == '<=':
            return sign <= 0
        if self.relation == '>':
            return sign > 0
        return sign >= 0

    def negated(self) -> 'BilinearConstraint':
        return BilinearConstraint(self.c0, self.c1, self.c2, self.c3, _NEGATION[self.relation])

    def sign_at(self, xn: int, xd: int, yn: int, yd: int) -> int:
        """Exact sign at the rational point (xn/xd, yn/yd); denominators positive"""
        (a0, a1, a2, a3), (b0, b1, b2, b3), d = self._ints
        r = a0 * xd * yd + a1 * xn * yd + a2 * yn * xd + a3 * xn * yn
        s = b0 * xd * yd + b1 * xn * yd + b2 * yn * xd + b3 * xn * yn
        return sign_of_quadratic(r, s, d)

    def slope_vanishes(self, yn: int, yd: int) -> bool:
        """True when c1 + c3*y == 0, so the sign does not depend on x"""
        (_, a1, _, a3), (_, b1, _, b3), _ = self._ints
        return a1 * yd + a3 * yn == 0 and b1 * yd + b3 * yn == 0

    def sign_at_surd(self, x: SurdValue, yn: int, yd: int) -> int:
        y = Fraction(yn, yd)
        value = self.c0 + self.c2 * y + (self.c1 + self.c3 * y) * x
        return value.sign()

    def coefficients_mpf(self):
        return tuple(c.to_mpf() for c in (self.c0, self.c1, self.c2, self.c3))

    def to_literal(self) -> str:
        return f"({self.c0},{self.c1},{self.c2},{self.c3},{self.relation})"


def constraint(c0=0, c1=0, c2=0, c3=0, relation='>') -> BilinearConstraint:
    return BilinearConstraint(SurdValue.coerce(c0), SurdValue.coerce(c1),
                              SurdValue.coerce(c2), SurdValue.coerce(c3), relation)


Cell = Tuple[BilinearConstraint, ...]


@dataclass(frozen=True)
class Region:
    """
    A union of cells, each a conjunction of bilinear constraints

    family/parameter record builtin regions ('jump', b), ('legendre', eps),
    ('hurwitz', 1/sqrt5) and ('omega', None); composed regions are 'custom'.
    """

    cells: Tuple[Cell, ...]
    label: str = 'custom'
    family: str = 'custom'
    parameter: object = None

    def __str__(self):
        return self.label

    def to_literal(self) -> str:
        return 'cells[' + '|'.join(';'.join(c.to_literal() for c in cell) for cell in self.cells) + ']'

    def constraints(self):
        for cell in self.cells:
            yield from cell

    @property
    def depends_on_x(self) -> bool:
        return any(c.depends_on_x for c in self.constraints())

    def union(self, other: 'Region') -> 'Region':
        return Region(self.cells + other.cells, f"({self.label} | {other.label})")

    def intersection(self, other: 'Region') -> 'Region':
        cells = tuple(a + b for a, b in itertools.product(self.cells, other.cells))
        return Region(cells, f"({self.label} & {other.label})")

    def complement(self) -> 'Region':
        """Omega minus the region, by De Morgan into DNF"""
        if not self.cells:
            return omega()
        cells: List[Cell] = [()]
        for cell in self.cells:
            if not cell:
                return Region((), f"~{self.label}")
            cells = [existing + (c.negated(),) for existing in cells for c in cell]
        return Region(tuple(cells), f"~{self.label}")

    def contains(self, z) -> bool:
        return contains(self, z)


def omega() -> Region:
    return Region(((),), 'omega', 'omega', None)


def jump(b: int) -> Region:
    if isinstance(b, bool) or int(b) != b or b < 2:
        raise BadParameter(f"jump region needs an integer b >= 2, got {b!r}")
    b = int(b)
    cell = (constraint(Fraction(1, b), 0, -1, 0, '>='),)
    return Region((cell,), f"jump({b})", 'jump', b)


def legendre(epsilon0) -> Region:
    eps = SurdValue.coerce(epsilon0)
    if not (eps > 0 and eps <= Fraction(1, 2)):
        raise BadParameter(f"legendre region needs 0 < eps0 <= 1/2, got {eps}")
    cell = (constraint(eps, 0, -1, eps, '>'),)
    return Region((cell,), f"legendre({eps})", 'legendre', eps)


def hurwitz() -> Region:
    region = legendre(ONE_OVER_SQRT5)
    return Region(region.cells, 'hurwitz', 'hurwitz', ONE_OVER_SQRT5)


def builtin_region(kind: str, parameter=None) -> Region:
    """
    Builtin regions by name

    Args:
        kind: 'jump', 'legendre', 'hurwitz' or 'omega'
        parameter: b for jump, eps0 for legendre

    Raises:
        BadParameter: for unknown kinds or out-of-range parameters
    """
    if kind == 'jump':
        return jump(parameter)
    if kind == 'legendre':
        return legendre(parameter)
    if kind == 'hurwitz':
        return hurwitz()
    if kind == 'omega':
        return omega()
    raise BadParameter(f"unknown builtin region {kind!r}")


def contained_in_g_sublevel(region: Region, epsilon) -> Optional[bool]:
    """
    Whether region lies in g^-1([0, eps]) for g = y/(1+xy)

    Known for builtins only; None for custom regions.
    """
    eps = SurdValue.coerce(epsilon)
    if region.family == 'jump':
        # g <= y <= 1/b
        return surd_compare(Fraction(1, region.parameter), eps) is not Ordering.GREATER
    if region.family in ('legendre', 'hurwitz'):
        return surd_compare(region.parameter, eps) is not Ordering.GREATER
    if region.family == 'omega':
        # sup g over Omega is 1/2
        return surd_compare(Fraction(1, 2), eps) is not Ordering.GREATER
    return None


# -- membership -------------------------------------------------------------

def _decide(region: Region, sign_of: Callable[[BilinearConstraint], Optional[int]]) -> Optional[bool]:
    unknown = False
    for cell in region.cells:
        state: Optional[bool] = True
        for c in cell:
            s = sign_of(c)
            if s is None:
                state = None
            elif not c.holds(s):
                state = False
                break
        if state is True:
            return True
        if state is None:
            unknown = True
    return None if unknown else False


def _interval_sign(c: BilinearConstraint, enclosure: RatInterval, yn: int, yd: int) -> Optional[int]:
    # linear in x for fixed y; x is irrational so it avoids both endpoints
    lo, hi = enclosure.lo, enclosure.hi
    s_lo = c.sign_at(lo.numerator, lo.denominator, yn, yd)
    s_hi = c.sign_at(hi.numerator, hi.denominator, yn, yd)
    if s_lo >= 0 and s_hi >= 0 and (s_lo or s_hi):
        return 1
    if s_lo <= 0 and s_hi <= 0 and (s_lo or s_hi):
        return -1
    if s_lo == 0 and s_hi == 0:
        return 0
    return None


def contains(region: Region, z) -> bool:
    """
    Decide whether the natural-extension point z lies in the region

    y is exact. x is used exactly when the tail is a compatible surd,
    otherwise through enclosures halved until every needed sign is known.

    Raises:
        PrecisionExhausted: the source cannot enclose x_n tightly enough
        UndecidableAtBudget: still undecided after the refinement budget
    """
    yn, yd = z.y_num, z.y_den
    exact_signs: Dict[int, int] = {}

    def exact_sign(c):
        key = id(c)
        if key not in exact_signs:
            if not c.depends_on_x or c.slope_vanishes(yn, yd):
                exact_signs[key] = c.sign_at(0, 1, yn, yd)
            else:
                exact_signs[key] = None
        return exact_signs[key]

    verdict = _decide(region, exact_sign)
    if verdict is not None:
        return verdict

    x_exact = z.x_tail.exact()
    if x_exact is not None:
        try:
            verdict = _decide(region, lambda c: exact_sign(c) if exact_sign(c) is not None
                              else c.sign_at_surd(x_exact, yn, yd))
        except MixedRadicands:
            verdict = None
        if verdict is not None:
            return verdict

    width = Settings.MEMBERSHIP_INITIAL_WIDTH
    for _ in range(Settings.MEMBERSHIP_HALVINGS + 1):
        try:
            enclosure = z.x_tail.enclosure(width)
        except PrecisionExhausted:
            enclosure = z.x_tail.available_enclosure()
            verdict = _decide(region, lambda c: exact_sign(c) if exact_sign(c) is not None
                              else _interval_sign(c, enclosure, yn, yd))
            if verdict is None:
                raise PrecisionExhausted(
                    f"x_{z.depth} known to width {float(enclosure.width):.3g}; "
                    f"membership in {region.label} undecided")
            return verdict
        verdict = _decide(region, lambda c: exact_sign(c) if exact_sign(c) is not None
                          else _interval_sign(c, enclosure, yn, yd))
        if verdict is not None:
            return verdict
        width /= 2
    raise UndecidableAtBudget(
        f"membership of z_{z.depth} in {region.label} undecided after "
        f"{Settings.MEMBERSHIP_HALVINGS} halvings")


# -- measure ----------------------------------------------------------------

@dataclass(frozen=True)
class MeasureEstimate:
    """
    Invariant measure of a region with a guaranteed error bound

    For sectioned quadrature the bound is the distance from value to the
    ends of the dyadic enclosure in `bounds`.
    """

    value: float
    error: float
    method: str
    bounds: Optional[MeasureBounds] = None

    def to_dict(self):
        data = {'value': self.value, 'error': self.error, 'method': self.method}
        if self.bounds is not None:
            data['enclosure'] = [self.bounds.lower, self.bounds.upper]
        return data


@dataclass(frozen=True)
class MeasureBounds:
    lower: float
    upper: float
    boxes: int

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper


def _to_mpf(value):
    if isinstance(value, SurdValue):
        return value.to_mpf()
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def rectangle_measure(x1, x2, y1, y2):
    """Invariant measure of [x1,x2] x [y1,y2] in closed form"""
    x1, x2, y1, y2 = (_to_mpf(v) for v in (x1, x2, y1, y2))
    return mp.log((1 + x2 * y2) * (1 + x1 * y1) / ((1 + x2 * y1) * (1 + x1 * y2))) / mp.log(2)


def _as_rectangle(cell: Cell):
    """[x1, x2, y1, y2] if every constraint is axis aligned, else None"""
    bounds = [mpf(0), mpf(1), mpf(0), mpf(1)]
    for c in cell:
        if c.c3.sign() != 0:
            return None
        has_x, has_y = c.c1.sign() != 0, c.c2.sign() != 0
        if has_x and has_y:
            return None
        if not has_x and not has_y:
            if not c.holds(c.c0.sign()):
                return [mpf(0), mpf(0), mpf(0), mpf(0)]
            continue
        slope = c.c1 if has_x else c.c2
        cut = (-c.c0 / slope).to_mpf()
        lower_side = (c.relation in ('>', '>=')) == (slope.sign() > 0)
        base = 0 if has_x else 2
        if lower_side:
            bounds[base] = max(bounds[base], cut)
        else:
            bounds[base + 1] = min(bounds[base + 1], cut)
    return bounds


def _section(cells_mpf, x):
    """Union of the y-intervals of every cell over the vertical line at x"""
    pieces = []
    for cell in cells_mpf:
        lo, hi = mpf(0), mpf(1)
        for a0, a1, a2, a3, rel in cell:
            a = a0 + a1 * x
            b = a2 + a3 * x
            if b == 0:
                ok = {'<': a < 0, '<=': a <= 0, '>': a > 0, '>=': a >= 0}[rel]
                if not ok:
                    lo, hi = mpf(1), mpf(0)
                continue
            cut = -a / b
            if (rel in ('>', '>=')) == (b > 0):
                lo = max(lo, cut)
            else:
                hi = min(hi, cut)
        if hi > lo:
            pieces.append((lo, hi))
    pieces.sort()
    merged = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def _breakpoints(cells_mpf) -> List:
    """x in (0,1) where the active bound of some section may change"""
    rows = [row for cell in cells_mpf for row in cell]
    roots = []

    def linear(k0, k1):
        if k1 != 0:
            roots.append(-k0 / k1)

    for a0, a1, a2, a3, _ in rows:
        linear(a2, a3)               # b(x) = 0
        linear(a0, a1)               # cut = 0
        linear(a0 + a2, a1 + a3)     # cut = 1
    for (a0, a1, a2, a3, _), (b0, b1, b2, b3, _) in itertools.combinations(rows, 2):
        k2 = a1 * b3 - b1 * a3
        k1 = a0 * b3 + a1 * b2 - b0 * a3 - b1 * a2
        k0 = a0 * b2 - b0 * a2
        if k2 == 0:
            linear(k0, k1)
            continue
        disc = k1 * k1 - 4 * k2 * k0
        if disc < 0:
            continue
        root = mp.sqrt(disc)
        roots.extend(((-k1 - root) / (2 * k2), (-k1 + root) / (2 * k2)))
    eps = mpf(10) ** (-(mp.dps - 5))
    inner = sorted(r for r in roots if eps < r < 1 - eps)
    points = [mpf(0)]
    for r in inner:
        if r - points[-1] > eps:
            points.append(r)
    points.append(mpf(1))
    return points


def _cells_mpf(region: Region):
    return [[(*c.coefficients_mpf(), c.relation) for c in cell] for cell in region.cells]


def measure(region: Region, tol=Fraction(1, 10 ** 12)) -> MeasureEstimate:
    """
    Invariant measure nu(R) with density 1/(log2 (1+xy)^2)

    Single axis-aligned cells use the closed rectangle formula. Other
    regions are integrated along vertical sections: for fixed x each
    constraint bounds y linearly, the inner integral is closed form, and
    the outer integral is split at every point where a bound changes.
    tol steers the quadrature only; the error reported is the distance
    to the ends of measure_bounds(region).
    """
    tol = float(tol)
    if tol <= 0:
        raise BadParameter("measure tolerance must be positive")
    if not region.cells:
        return MeasureEstimate(0.0, 0.0, 'empty')
    with mp.workdps(Settings.QUADRATURE_DPS):
        if len(region.cells) == 1:
            rect = _as_rectangle(region.cells[0])
            if rect is not None:
                x1, x2, y1, y2 = rect
                if x2 <= x1 or y2 <= y1:
                    return MeasureEstimate(0.0, 0.0, 'closed-form')
                return MeasureEstimate(float(rectangle_measure(x1, x2, y1, y2)), 0.0, 'closed-form')

        cells = _cells_mpf(region)
        points = _breakpoints(cells)

        def inner(x):
            return sum((hi - lo) / ((1 + x * lo) * (1 + x * hi)) for lo, hi in _section(cells, x))

        degree = 6
        while True:
            value, quad_error = mp.quad(inner, points, error=True, maxdegree=degree)
            if quad_error <= tol or degree >= Settings.QUADRATURE_MAX_DEGREE:
                break
            degree += 2
        log2 = mp.log(2)
        value, quad_error = float(value / log2), float(quad_error / log2)
    if quad_error > tol:
        logger.warning(f"measure({region.label}): quadrature stopped at degree {degree} "
                       f"with estimated error {quad_error:.3g} > {tol:.3g}")

    # the reported error comes from the dyadic enclosure, not the quadrature estimate
    bounds = measure_bounds(region)
    if value not in bounds:
        if min(abs(value - bounds.lower), abs(value - bounds.upper)) > max(quad_error, tol):
            logger.warning(f"measure({region.label}): quadrature value {value} outside "
                           f"[{bounds.lower}, {bounds.upper}]; clamped")
        value = min(max(value, bounds.lower), bounds.upper)
    error = max(value - bounds.lower, bounds.upper - value)
    estimate = MeasureEstimate(value, error, 'sections', bounds)
    logger.debug(f"measure({region.label}) = {estimate.value} +/- {estimate.error}")
    return estimate


def _box_state(region: Region, corners) -> Optional[bool]:
    def sign_of(c):
        signs = [c.holds(c.sign_at(*corner)) for corner in corners]
        if all(signs):
            return {'<': -1, '<=': -1, '>': 1, '>=': 1}[c.relation]
        if not any(signs):
            return {'<': 1, '<=': 1, '>': -1, '>=': -1}[c.relation]
        return None
    return _decide(region, sign_of)


def measure_bounds(region: Region, depth: int = None, max_boxes: int = None) -> MeasureBounds:
    """
    Rigorous lower/upper bounds by dyadic subdivision

    A bilinear form is extremal at box corners, so a box lies inside or
    outside a constraint when all four corners agree.
    """
    depth = Settings.QUADRATURE_DEPTH_CAP if depth is None else depth
    max_boxes = Settings.QUADRATURE_MAX_BOXES if max_boxes is None else max_boxes
    lower = mpf(0)
    undecided = mpf(0)
    counter = itertools.count()
    processed = 0
    with mp.workdps(Settings.QUADRATURE_DPS):
        # boxes are (ix, iy, level): [ix, ix+1] x [iy, iy+1] scaled by 2^-level
        heap = [(-rectangle_measure(0, 1, 0, 1), next(counter), 0, 0, 0)]
        while heap:
            neg_mass, _, ix, iy, level = heapq.heappop(heap)
            mass = -neg_mass
            scale = 1 << level
            corners = [(ix + dx, scale, iy + dy, scale) for dx in (0, 1) for dy in (0, 1)]
            state = _box_state(region, corners)
            processed += 1
            if state is True:
                lower += mass
                continue
            if state is False:
                continue
            if level >= depth or processed + len(heap) >= max_boxes:
                undecided += mass
                continue
            child_scale = scale * 2
            for cx in (2 * ix, 2 * ix + 1):
                for cy in (2 * iy, 2 * iy + 1):
                    child_mass = rectangle_measure(Fraction(cx, child_scale), Fraction(cx + 1, child_scale),
                                                   Fraction(cy, child_scale), Fraction(cy + 1, child_scale))
                    heapq.heappush(heap, (-child_mass, next(counter), cx, cy, level + 1))
        return MeasureBounds(float(lower), float(lower + undecided), processed)


# -- cell structure -----------------------------------------------------------

HURWITZ_CELLS = ('D1', 'D21', 'D22', 'D3')

_SQRT5 = SurdValue.sqrt(5)
_C1 = constraint(1, -_SQRT5, 0, 1, '>')                                # x < 1/(sqrt5 - y)
_C21 = constraint(1 - _SQRT5, _SQRT5, -_SQRT5, _SQRT5 + 1, '>')       # lower x-bound of D21
_RIGHT_HALF = constraint(Fraction(-1, 2), 1, 0, 0, '>')                # x > 1/2


def hurwitz_cells() -> Dict[str, Region]:
    """The four cells D1, D21, D22, D3 partitioning the Hurwitz region"""
    (base,) = hurwitz().cells
    not_c1 = _C1.negated()
    return {
        'D1': Region((base + (_C1,),), 'D1'),
        'D21': Region((base + (not_c1, _RIGHT_HALF, _C21),), 'D21'),
        'D22': Region((base + (not_c1, _RIGHT_HALF.negated()),), 'D22'),
        'D3': Region((base + (not_c1, _RIGHT_HALF, _C21.negated()),), 'D3'),
    }


def hurwitz_matrix(cell: str, a: int) -> IntMatrix2:
    """M_Delta on the cell with digit index a"""
    if a < 1:
        raise BadParameter(f"digit index must be positive, got {a}")
    table = {
        'D1': IntMatrix2(0, 1, 1, a),
        'D21': IntMatrix2(1, a, 1, a + 1),
        'D22': IntMatrix2(1, a, 2, 2 * a + 1),
        'D3': IntMatrix2(1, a + 1, 2, 2 * a + 1),
    }
    try:
        return table[cell]
    except KeyError:
        raise BadParameter(f"unknown Hurwitz cell {cell!r}") from None


# digit index of each cell is the RCF digit at this position
HURWITZ_DIGIT_POSITION = {'D1': 1, 'D21': 2, 'D22': 2, 'D3': 3}


def hurwitz_cell(z) -> Tuple[str, int]:
    """
    (cell, a) for a point of the Hurwitz region

    The cell is decided by membership; a is floor(1/x), floor(x/(1-x)),
    floor(x/(1-2x)) or floor((1-x)/(2x-1)), which equals the RCF digit
    a_1, a_2, a_2 or a_3 of the tail respectively.

    Raises:
        BadParameter: if z is outside the Hurwitz region
    """
    cells = hurwitz_cells()
    for name in HURWITZ_CELLS:
        if contains(cells[name], z):
            source = z.x_tail.source
            return name, source.digit(z.depth + HURWITZ_DIGIT_POSITION[name])
    raise BadParameter(f"z_{z.depth} is not in the Hurwitz region")


@dataclass(frozen=True)
class EmptinessCertificate:
    """
    D22(a) needs x < (a+1)/(2a+3) and x >= 1/(sqrt5 - y) >= 1/sqrt5

    empty is True when (a+1)/(2a+3) <= 1/sqrt5 proves the cell empty,
    and None when this bound proves nothing either way.
    """

    a: int
    x_upper: Fraction
    x_lower: SurdValue
    empty: Optional[bool]


def d22_small_digit_infeasibility(max_digit: int = 4) -> List[EmptinessCertificate]:
    certificates = []
    for a in range(1, max_digit + 1):
        upper = Fraction(a + 1, 2 * a + 3)
        empty = True if surd_compare(upper, ONE_OVER_SQRT5) is not Ordering.GREATER else None
        certificates.append(EmptinessCertificate(a, upper, ONE_OVER_SQRT5, empty))
    return certificates


@dataclass(frozen=True)
class JumpCell:
    """Delta_W(a): the consumed word W (digits < b) followed by the digit a >= b"""

    word: Tuple[int, ...]
    a: int
    b: int

    @property
    def label(self) -> str:
        if self.b == 2:
            return f"D{len(self.word)}({self.a})"
        return f"D[{','.join(map(str, self.word))}]({self.a})"

    def __str__(self):
        return self.label


def jump_cell(digits: Sequence[int], b: int) -> JumpCell:
    """Cell entered by an induced step of jump(b) that consumed these digits"""
    if not digits:
        raise BadParameter("an induced step consumes at least one digit")
    return JumpCell(tuple(digits[:-1]), digits[-1], b)


def fibonacci_cell_bounds(n: int, a: int) -> RatInterval:
    """x-range of D_n(a) for jump(2): n leading ones, then the digit a >= 2"""
    if n < 0 or a < 2:
        raise BadParameter(f"D_n(a) needs n >= 0 and a >= 2, got n={n}, a={a}")
    m = fibonacci_matrix(n, a)
    ends = (mobius_apply(m, 0), mobius_apply(m, 1))
    return RatInterval(min(ends), max(ends))
