"""
Tests for the induced natural extension and the SOCF digits it produces
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superoptimalCF.config.fixtures import load_fixture
from superoptimalCF.core.contraction import (GcfDigit, format_term, gcf_convergents, iter_socf,
                                             q_block, rcf_as_gcf, socf_digits, socf_digits_oracle)
from superoptimalCF.core.errors import BadParameter, DivergentConvergent, NeverHitsWithinCap
from superoptimalCF.core.expr import parse_surd
from superoptimalCF.core.matrix import IntMatrix2, product_of_digits
from superoptimalCF.core.natural_extension import (hitting_time, induced_step, ne_step,
                                                   start_point)
from superoptimalCF.core.regions import (hurwitz, hurwitz_cell, hurwitz_matrix, jump, jump_cell,
                                         legendre, omega)
from superoptimalCF.core.tail_source import DecimalTail, QuadraticSurdTail, random_digit_stream

BUILTINS = [jump(2), jump(3), legendre(Fraction(2, 5)), hurwitz()]

PI_JUMP2_TERMS = ["1/7", "1/16", "-1/(881/3)", "(-1/3)/11", "-3/5", "-1/15",
                  "1/(5/2)", "(1/2)/5", "2/2", "1/2", "1/3"]
PI_JUMP2_CONVERGENTS = ["0/1", "1/7", "16/113", "14093/99532", "51669/364913", "244252/1725033",
                        "3612111/25510582", "18549059/131002976", "48178703/340262731",
                        "114906465/811528438", "277991633/1963319607", "948881364/6701487259"]
PI_JUMP2_CELLS = ["D0(7)", "D0(15)", "D1(292)", "D3(2)", "D1(3)", "D1(14)",
                  "D0(2)", "D2(2)", "D0(2)", "D0(2)", "D0(2)", "D1(84)"]

PI_HURWITZ_TERMS = ["1/7", "1/16", "-1/294", "-1/3", "-1/4", "-1/5", "-1/15",
                    "1/(5/2)", "(1/2)/5", "2/2", "1/2"]
PI_HURWITZ_CONVERGENTS = ["0/1", "1/7", "16/113", "4703/33215", "14093/99532", "51669/364913",
                          "244252/1725033", "3612111/25510582", "18549059/131002976",
                          "48178703/340262731", "114906465/811528438", "277991633/1963319607"]
PI_HURWITZ_CELLS = ["D1(7)", "D1(15)", "D21(292)", "D21(1)", "D21(2)", "D21(3)",
                    "D21(14)", "D1(2)", "D3(2)", "D1(2)", "D1(2)", "D1(2)"]


def pi_source():
    return DecimalTail(load_fixture('pi'), label='pi-3')


def golden_source():
    return QuadraticSurdTail(parse_surd("(sqrt(5)-1)/2"))


# -- worked expansions of pi - 3 ------------------------------------------------

def test_pi_jump2_expansion():
    expansion = socf_digits(jump(2), pi_source(), 11)
    assert expansion.beta0 == 0
    assert expansion.terms() == PI_JUMP2_TERMS
    assert [str(c) for c in expansion.convergents] == PI_JUMP2_CONVERGENTS
    assert [jump_cell(step.word, 2).label for step in expansion.steps] == PI_JUMP2_CELLS
    assert expansion.display().startswith("[0; 1/7, 1/16, -1/(881/3)")


def test_pi_hurwitz_expansion():
    expansion = socf_digits(hurwitz(), pi_source(), 11)
    assert expansion.terms() == PI_HURWITZ_TERMS
    assert [str(c) for c in expansion.convergents] == PI_HURWITZ_CONVERGENTS
    labels = []
    for step in expansion.steps:
        name, a = hurwitz_cell(step.z_start)
        labels.append(f"{name}({a})")
        assert hurwitz_matrix(name, a) == step.M_delta
    assert labels == PI_HURWITZ_CELLS


def test_pi_hurwitz_convergents_skip_only_large_theta():
    # 4687/33102 has Θ above 1/sqrt5 and is left out; 4703/33215 is kept
    convergents = [str(c) for c in socf_digits(hurwitz(), pi_source(), 5).convergents]
    assert "4687/33102" not in convergents
    assert "4703/33215" in convergents


def test_pi_expansions_agree_with_oracle():
    for region in (jump(2), hurwitz()):
        src = pi_source()
        expansion = socf_digits(region, src, 11)
        oracle = socf_digits_oracle(src, expansion.hit_indices, 11)
        assert expansion.same_digits(oracle)
        assert [c.value for c in oracle.convergents] == [c.value for c in expansion.convergents]


# -- surds ----------------------------------------------------------------------

def test_sqrt2_under_jump2_is_constant():
    expansion = socf_digits(jump(2), QuadraticSurdTail(parse_surd("sqrt(2)-1")), 8)
    assert (expansion.beta0, expansion.alpha0) == (0, 1)
    assert all((d.alpha, d.beta) == (1, 2) for d in expansion.digits)
    assert [str(c) for c in expansion.convergents[:4]] == ["0/1", "1/2", "2/5", "5/12"]


def test_omega_reproduces_the_rcf():
    src = QuadraticSurdTail(parse_surd("sqrt(7)-2"))
    expansion = socf_digits(omega(), src, 8)
    assert expansion.hit_indices == list(range(9))
    assert [d.beta for d in expansion.digits] == [src.digit(k) for k in range(1, 9)]
    assert all(d.alpha == 1 for d in expansion.digits)


def test_golden_ratio_leaves_jump2_for_good():
    # y_n = F_n/F_{n+1} equals 1/2 once, then stays above it
    src = golden_source()
    assert hitting_time(jump(2), start_point(src)) == 2
    with pytest.raises(NeverHitsWithinCap) as info:
        socf_digits(jump(2), golden_source(), 3, cap=200)
    assert info.value.cap == 200
    assert info.value.depth == 2


def test_iter_socf_streams_prefix_before_failure():
    records = []
    with pytest.raises(NeverHitsWithinCap):
        for record in iter_socf(jump(2), golden_source(), cap=50):
            records.append(record)
    assert len(records) == 1
    assert str(records[0].convergent) == "1/1"


def test_golden_ratio_keeps_returning_to_hurwitz():
    expansion = socf_digits(hurwitz(), golden_source(), 6)
    assert all(step.j <= 3 for step in expansion.steps)


# -- step structure -------------------------------------------------------------

def test_induced_step_matrix_is_word_product():
    src = pi_source()
    z = start_point(src)
    for _ in range(6):
        step = induced_step(jump(2), z)
        assert step.M_delta == product_of_digits(step.word)
        assert step.M_delta.det == (-1) ** step.j
        assert step.z_next.depth == z.depth + step.j
        z = step.z_next


def test_ne_step_keeps_y_as_ratio_of_denominators():
    src = QuadraticSurdTail(parse_surd("sqrt(2)-1"))
    z = start_point(src)
    for n in range(1, 8):
        z = ne_step(z)
        assert z.y == Fraction(src.q(n - 1), src.q(n))


def test_start_point_rejects_y_outside_unit_interval():
    with pytest.raises(BadParameter):
        start_point(pi_source(), Fraction(3, 2))


@pytest.mark.parametrize("b", [2, 3, 4])
def test_jump_steps_ignore_the_starting_y(b):
    src = pi_source()
    words = set()
    for y in (Fraction(0), Fraction(1, 2 * b), Fraction(1, b)):
        step = induced_step(jump(b), start_point(src, y))
        words.add((step.word, step.M_delta))
    assert len(words) == 1


def test_hitting_time_rejects_bad_cap():
    with pytest.raises(BadParameter):
        hitting_time(jump(2), start_point(pi_source()), cap=0)


# -- contraction invariants on random digit streams -------------------------------

def _check_expansion(region, seed, K):
    src = random_digit_stream(seed)
    expansion = socf_digits(region, src, K)

    # convergents coincide with RCF convergents at the hit indices
    for convergent in expansion.convergents:
        assert (convergent.P, convergent.Q) == (src.p(convergent.n), src.q(convergent.n))

    # n(k) and Q_k strictly increase
    indices = expansion.hit_indices
    assert all(b > a for a, b in zip(indices, indices[1:]))
    Qs = [c.Q for c in expansion.convergents]
    assert all(b > a for a, b in zip(Qs[1:], Qs[2:]))

    # the product of the step matrices is the RCF matrix of the consumed digits
    total = IntMatrix2.identity()
    for step in expansion.steps:
        assert step.M_delta.det == (-1) ** step.j
        total = total @ step.M_delta
    assert total == product_of_digits(src.digit_slice(0, indices[-1] + 1))

    oracle = socf_digits_oracle(src, indices, K)
    assert expansion.same_digits(oracle)
    return expansion


@pytest.mark.parametrize("region", BUILTINS, ids=lambda r: r.label)
@pytest.mark.parametrize("seed", range(5))
def test_contraction_invariants(region, seed):
    expansion = _check_expansion(region, seed, 20)
    if region.family == 'hurwitz':
        assert all(step.j <= 3 for step in expansion.steps)


@pytest.mark.slow
@pytest.mark.parametrize("region", BUILTINS, ids=lambda r: r.label)
def test_contraction_invariants_many_seeds(region):
    for seed in range(100):
        _check_expansion(region, 1000 + seed, 50)


@pytest.mark.slow
def test_hurwitz_hitting_times_stay_below_four():
    # 100 orbits of 1000 induced steps each
    region = hurwitz()
    for seed in range(100):
        z = start_point(random_digit_stream(2000 + seed))
        for _ in range(1000):
            step = induced_step(region, z)
            assert step.j <= 3, f"seed {seed} depth {z.depth}"
            z = step.z_next


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=40), st.integers(min_value=1, max_value=30))
def test_quadratic_surds_under_jump2(m, k):
    # sqrt(m^2 + k) - m lies in (0, 1) whenever k < 2m + 1
    if k >= 2 * m + 1:
        return
    src = QuadraticSurdTail(parse_surd(f"sqrt({m * m + k})-{m}"))
    try:
        expansion = socf_digits(jump(2), src, 6, cap=500)
    except NeverHitsWithinCap:
        return
    for convergent in expansion.convergents:
        assert (convergent.P, convergent.Q) == (src.p(convergent.n), src.q(convergent.n))


# -- GCF helpers ------------------------------------------------------------------

def test_rcf_as_gcf_gives_rcf_convergents():
    src = QuadraticSurdTail(parse_surd("sqrt(2)-1"))
    beta0, alpha0, digits = rcf_as_gcf(src, 5)
    assert [str(c) for c in gcf_convergents(beta0, alpha0, digits)] == \
        ["0/1", "1/2", "2/5", "5/12", "12/29", "29/70"]


def test_gcf_convergents_detect_vanishing_denominator():
    with pytest.raises(DivergentConvergent):
        gcf_convergents(0, 1, [GcfDigit(1, Fraction(1), Fraction(0))])
    with pytest.raises(BadParameter):
        gcf_convergents(0, 1, [], K=2)


def test_zero_partial_numerator_is_rejected():
    with pytest.raises(BadParameter):
        GcfDigit(1, Fraction(0), Fraction(3))


def test_q_block_edge_cases():
    src = pi_source()
    src.advance_to(6)
    assert q_block(src, 3, 2) == 1
    assert q_block(src, 0, 3) == src.p(3)
    assert q_block(src, 1, 3) == src.q(3)
    with pytest.raises(BadParameter):
        q_block(src, 4, 1)


def test_oracle_rejects_bad_indices():
    src = pi_source()
    with pytest.raises(BadParameter):
        socf_digits_oracle(src, [0, 2, 2], 2)
    with pytest.raises(BadParameter):
        socf_digits_oracle(src, [0, 1], 2)


def test_socf_needs_positive_K_and_fresh_source():
    with pytest.raises(BadParameter):
        socf_digits(jump(2), pi_source(), 0)
    src = pi_source()
    src.advance_to(2)
    with pytest.raises(BadParameter):
        socf_digits(jump(2), src, 3)


@pytest.mark.parametrize("alpha,beta,text", [
    (Fraction(1), Fraction(7), "1/7"),
    (Fraction(-1), Fraction(881, 3), "-1/(881/3)"),
    (Fraction(-1, 3), Fraction(11), "(-1/3)/11"),
    (Fraction(2), Fraction(2), "2/2"),
])
def test_format_term(alpha, beta, text):
    assert format_term(alpha, beta) == text
