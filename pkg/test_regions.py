"""
Tests for bilinear regions: literals, membership, measures and cell structure
"""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superoptimalCF.config.fixtures import load_fixture
from superoptimalCF.config.settings import Settings
from superoptimalCF.core.errors import BadParameter, ParseError
from superoptimalCF.core.expr import parse_surd
from superoptimalCF.core.matrix import fibonacci_matrix
from superoptimalCF.core.natural_extension import induced_step, ne_step, start_point
from superoptimalCF.core.region_dsl import parse_region
from superoptimalCF.core.regions import (constraint, contained_in_g_sublevel, contains,
                                         d22_small_digit_infeasibility, fibonacci_cell_bounds,
                                         hurwitz, hurwitz_cell, hurwitz_cells, hurwitz_matrix, jump,
                                         jump_cell, legendre, measure, measure_bounds, omega,
                                         rectangle_measure, Region)
from superoptimalCF.core.surd import ONE_OVER_SQRT5, Ordering, surd_compare
from superoptimalCF.core.tail_source import DecimalTail, QuadraticSurdTail, random_digit_stream

LOG2 = math.log(2)


def point(x_text, y):
    return start_point(QuadraticSurdTail(parse_surd(x_text)), y)


# -- literals ----------------------------------------------------------------------

def test_jump_region_encoding():
    region = jump(2)
    assert region.label == 'jump(2)'
    assert len(region.cells) == 1 and len(region.cells[0]) == 1
    (c,) = region.cells[0]
    assert (c.c0, c.c1, c.c2, c.c3, c.relation) == (Fraction(1, 2), 0, -1, 0, '>=')


@pytest.mark.parametrize("text,label", [
    ("jump(2)", "jump(2)"),
    ("jump( 3 )", "jump(3)"),
    ("legendre(2/5)", "legendre(2/5)"),
    ("hurwitz", "hurwitz"),
    ("omega", "omega"),
])
def test_parse_builtin_literals(text, label):
    assert parse_region(text).label == label


def test_parse_cells_literal_matches_builtin():
    region = parse_region("cells[(1/2,0,-1,0,>=)]")
    assert region.cells == jump(2).cells
    assert parse_region(jump(3).to_literal()).cells == jump(3).cells


def test_parse_composite_literals():
    region = parse_region("union(jump(3), complement(jump(2)))")
    assert contains(region, point("sqrt(2)-1", Fraction(1, 4)))
    assert contains(region, point("sqrt(2)-1", Fraction(2, 3)))
    assert not contains(region, point("sqrt(2)-1", Fraction(2, 5)))
    both = parse_region("intersect(jump(2), legendre(1/4))")
    assert len(both.cells) == 1 and len(both.cells[0]) == 2


@pytest.mark.parametrize("text", [
    "jump(", "jump(x)", "square", "cells[(1,2,3)]", "cells[(1,0,0,0,=)]",
    "union(jump(2))", "cells[(sqrt(2),sqrt(3),0,0,>)]", "legendre(2/5",
])
def test_parse_region_rejects(text):
    with pytest.raises(ParseError):
        parse_region(text)


@pytest.mark.parametrize("text", ["jump(1)", "legendre(3/4)", "legendre(0)"])
def test_builtin_parameter_ranges(text):
    with pytest.raises(BadParameter):
        parse_region(text)


# -- membership --------------------------------------------------------------------

def test_jump_membership_depends_on_y_only():
    assert contains(jump(2), point("sqrt(2)-1", 0))
    assert contains(jump(2), point("sqrt(2)-1", Fraction(1, 2)))       # closed at 1/b
    assert not contains(jump(2), point("sqrt(2)-1", Fraction(2, 3)))


def test_legendre_membership_is_strict():
    # g = y/(1+xy); with y = 2/5 and x = sqrt(2)-1, g ~ 0.343
    assert contains(legendre(Fraction(2, 5)), point("sqrt(2)-1", Fraction(2, 5)))
    assert not contains(legendre(Fraction(2, 5)), point("sqrt(2)-1", Fraction(1, 2)))


def test_membership_with_decimal_tails():
    src = DecimalTail(load_fixture('pi'))
    z = start_point(src)
    assert contains(hurwitz(), z)
    for _ in range(3):
        z = ne_step(z)
    # z_3 = (x_3, 106/113): g is near 0.94 > 1/sqrt5
    assert not contains(hurwitz(), z)


def test_complement_partitions_omega():
    region = legendre(Fraction(2, 5))
    outside = region.complement()
    for y in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)):
        z = point("sqrt(7)-2", y)
        assert contains(region, z) != contains(outside, z)


def test_omega_contains_everything():
    assert contains(omega(), point("sqrt(2)-1", Fraction(1)))


def test_mixed_radicand_surd_tail_falls_back_to_enclosures():
    # sqrt(2) tail against a 1/sqrt5 boundary; g(x, 3/5) ~ 0.48
    assert contains(hurwitz(), point("sqrt(2)-1", Fraction(1, 3)))
    assert not contains(hurwitz(), point("sqrt(2)-1", Fraction(3, 5)))


def test_g_sublevel_containment():
    assert contained_in_g_sublevel(jump(2), Fraction(1, 2)) is True
    assert contained_in_g_sublevel(jump(2), Fraction(2, 5)) is False
    assert contained_in_g_sublevel(hurwitz(), ONE_OVER_SQRT5) is True
    assert contained_in_g_sublevel(legendre(Fraction(1, 4)), Fraction(1, 5)) is False
    assert contained_in_g_sublevel(jump(2).union(jump(3)), Fraction(1, 2)) is None


QUADRATIC_TAILS = ["sqrt(2)-1", "sqrt(3)-1", "sqrt(7)-2", "sqrt(6)-2",
                   "(sqrt(5)-1)/2", "sqrt(5)-2", "(3-sqrt(5))/2"]
unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=1000)


def exact_g(x_text, y):
    x = parse_surd(x_text)
    return y / (1 + x * y)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(QUADRATIC_TAILS), unit_fractions,
       st.sampled_from([Fraction(1, 2), Fraction(2, 5), Fraction(1, 3), Fraction(1, 4)]))
def test_legendre_membership_matches_exact_g(x_text, y, eps):
    ordering = surd_compare(exact_g(x_text, y), eps)
    assert contains(legendre(eps), point(x_text, y)) == (ordering is Ordering.LESS)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["(sqrt(5)-1)/2", "sqrt(5)-2", "(3-sqrt(5))/2"]), unit_fractions)
def test_hurwitz_membership_matches_exact_g(x_text, y):
    ordering = surd_compare(exact_g(x_text, y), ONE_OVER_SQRT5)
    assert contains(hurwitz(), point(x_text, y)) == (ordering is Ordering.LESS)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(QUADRATIC_TAILS), unit_fractions, st.integers(min_value=2, max_value=6))
def test_jump_membership_matches_y_bound(x_text, y, b):
    assert contains(jump(b), point(x_text, y)) == (y <= Fraction(1, b))


# -- measure -----------------------------------------------------------------------

def test_measure_of_jump_regions():
    for b in (2, 3, 5):
        estimate = measure(jump(b))
        assert estimate.method == 'closed-form'
        assert abs(estimate.value - math.log(1 + 1 / b) / LOG2) < 1e-9


@pytest.mark.parametrize("eps", [Fraction(1, 2), Fraction(2, 5), Fraction(1, 4)])
def test_measure_of_legendre_regions(eps):
    assert abs(measure(legendre(eps)).value - float(eps) / LOG2) < 1e-9


def test_measure_of_hurwitz_and_omega():
    assert abs(measure(hurwitz()).value - 1 / math.sqrt(5) / LOG2) < 1e-9
    assert abs(measure(omega()).value - 1.0) < 1e-12


def test_measure_of_union_and_complement():
    region = legendre(Fraction(2, 5))
    total = measure(region).value + measure(region.complement()).value
    assert abs(total - 1.0) < 1e-9
    # jump(3) lies inside jump(2)
    assert abs(measure(jump(2).union(jump(3))).value - measure(jump(2)).value) < 1e-9


def test_empty_region_has_zero_measure():
    assert measure(Region((), 'empty')).value == 0.0


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=64), min_size=4, max_size=4))
def test_quadrature_agrees_with_rectangle_closed_form(bounds):
    x1, x2 = sorted(bounds[:2])
    y1, y2 = sorted(bounds[2:])
    if x1 == x2 or y1 == y2:
        return
    # the same rectangle with an x-dependent tautology forces section integration
    cell = (constraint(-x1, 1, 0, 0, '>='), constraint(x2, -1, 0, 0, '>='),
            constraint(-y1, 0, 1, 0, '>='), constraint(y2, 0, -1, 0, '>='),
            constraint(1, 0, 0, 1, '>'))
    estimate = measure(Region((cell,)), tol=Fraction(1, 10 ** 12))
    assert estimate.method == 'sections'
    assert abs(estimate.value - float(rectangle_measure(x1, x2, y1, y2))) < 1e-10


def test_measure_bounds_bracket_quadrature():
    for region in (jump(2), legendre(Fraction(2, 5)), hurwitz()):
        bounds = measure_bounds(region, depth=8)
        value = measure(region).value
        assert bounds.lower - 1e-12 <= value <= bounds.upper + 1e-12
        assert bounds.upper - bounds.lower < 0.2


def test_measure_error_comes_from_the_dyadic_enclosure():
    estimate = measure(hurwitz())
    exact = 1 / math.sqrt(5) / LOG2
    assert estimate.method == 'sections'
    assert estimate.bounds.lower <= exact <= estimate.bounds.upper
    assert estimate.error == max(estimate.value - estimate.bounds.lower,
                                 estimate.bounds.upper - estimate.value)
    assert abs(estimate.value - exact) <= estimate.error
    assert estimate.to_dict()['enclosure'] == [estimate.bounds.lower, estimate.bounds.upper]

    closed = measure(jump(2))
    assert closed.error == 0.0 and closed.bounds is None


def test_measure_keeps_its_bound_when_quadrature_stops_early(monkeypatch):
    monkeypatch.setattr(Settings, 'QUADRATURE_MAX_DEGREE', 6)
    estimate = measure(legendre(Fraction(2, 5)), tol=Fraction(1, 10 ** 40))
    assert abs(estimate.value - 0.4 / LOG2) <= estimate.error
    assert estimate.bounds is not None


# -- cell structure ----------------------------------------------------------------

def test_hurwitz_cells_partition_the_region():
    cells = hurwitz_cells()
    total = sum(measure(cell).value for cell in cells.values())
    assert abs(total - measure(hurwitz()).value) < 1e-8


def random_points(count, seed):
    rng = np.random.default_rng(seed)
    for i in range(count):
        y = Fraction(int(rng.integers(0, 2 ** 16, endpoint=True)), 2 ** 16)
        yield start_point(random_digit_stream(seed * 100_000 + i), y)


@pytest.mark.parametrize("count", [200, pytest.param(1000, marks=pytest.mark.slow)])
def test_hurwitz_cells_partition_the_region_pointwise(count):
    region, cells = hurwitz(), hurwitz_cells()
    inside = 0
    for z in random_points(count, seed=17):
        owners = [name for name, cell in cells.items() if contains(cell, z)]
        if contains(region, z):
            inside += 1
            assert len(owners) == 1
        else:
            assert owners == []
    assert 0 < inside < count


def test_hurwitz_cell_of_a_d22_point():
    # sqrt(6)-2 = [0; 2, 4, 2, 4, ...] lies in [1/sqrt5, 5/11)
    for y in (Fraction(0), Fraction(1, 1000)):
        z = point("sqrt(6)-2", y)
        name, a = hurwitz_cell(z)
        assert (name, a) == ('D22', 4)
        assert a >= 4
        assert induced_step(hurwitz(), z).M_delta == hurwitz_matrix('D22', a)


def test_hurwitz_matrix_table():
    assert hurwitz_matrix('D1', 7) == fibonacci_matrix(0, 7)
    assert hurwitz_matrix('D21', 292) == fibonacci_matrix(1, 292)
    assert hurwitz_matrix('D3', 2) == fibonacci_matrix(2, 2)
    assert hurwitz_matrix('D22', 5).det == 1
    with pytest.raises(BadParameter):
        hurwitz_matrix('D4', 1)


def test_d22_is_empty_for_small_digits():
    certificates = {c.a: c.empty for c in d22_small_digit_infeasibility(6)}
    assert certificates == {1: True, 2: True, 3: True, 4: None, 5: None, 6: None}


def test_fibonacci_cell_bounds_locate_pi():
    bounds = fibonacci_cell_bounds(0, 7)
    assert (bounds.lo, bounds.hi) == (Fraction(1, 8), Fraction(1, 7))
    assert Fraction(314159, 10 ** 5) - 3 in bounds
    with pytest.raises(BadParameter):
        fibonacci_cell_bounds(2, 1)


def test_jump_cell_labels():
    assert jump_cell((1, 1, 1, 2), 2).label == 'D3(2)'
    assert jump_cell((7,), 2).label == 'D0(7)'
    assert jump_cell((1, 2, 5), 3).label == 'D[1,2](5)'
