"""
Superoptimal continued fraction digits from the induced map

Digits come straight from consecutive induced steps: with
M_Delta(z_k) = [[r_k, p_k], [s_k, q_k]] and j_k the k-th hitting time,

    beta_0  = r_0 / s_0
    alpha_0 = (-1)^(j_0+1) / s_0
    alpha_k = (-1)^(j_k+1) s_{k-1} / s_k
    beta_k  = q_{k-1} + s_{k-1} r_k / s_k

No RCF bookkeeping beyond the current step is needed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import BadParameter, DivergentConvergent
from .intervals import RatInterval
from .matrix import product_of_digits
from .natural_extension import InducedStep, induced_step, start_point
from .regions import Region
from .surd import SurdValue
from .tail_source import TailSource, theta

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GcfDigit:
    """The pair (alpha_k, beta_k); alpha is never zero"""

    k: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.alpha == 0:
            raise BadParameter(f"partial numerator alpha_{self.k} is zero")


@dataclass(frozen=True)
class GcfConvergent:
    """P_k/Q_k in lowest terms; n is the RCF depth it coincides with"""

    k: int
    P: int
    Q: int
    n: Optional[int] = None

    @property
    def value(self) -> Fraction:
        return Fraction(self.P, self.Q)

    def __str__(self):
        return f"{self.P}/{self.Q}"


@dataclass(frozen=True)
class SocfRecord:
    """Everything known after the k-th induced step"""

    k: int
    alpha: Fraction
    beta: Fraction
    term: Optional[str]
    j: int
    n: int
    convergent: GcfConvergent
    step: InducedStep
    theta: Union[SurdValue, RatInterval, None] = None


@dataclass
class SocfExpansion:
    """[beta_0; alpha_0/beta_1, alpha_1/beta_2, ...] with its convergents"""

    label: str
    beta0: Fraction
    alpha0: Fraction
    digits: List[GcfDigit]
    convergents: List[GcfConvergent]
    hit_indices: List[int]
    steps: List[InducedStep] = field(default_factory=list)

    def terms(self) -> List[str]:
        alphas = [self.alpha0] + [d.alpha for d in self.digits]
        return [format_term(alphas[i], d.beta) for i, d in enumerate(self.digits)]

    def display(self) -> str:
        return f"[{format_fraction(self.beta0)}; " + ', '.join(self.terms()) + ']'

    def same_digits(self, other: 'SocfExpansion') -> bool:
        return (self.beta0, self.alpha0, [(d.alpha, d.beta) for d in self.digits]) == \
               (other.beta0, other.alpha0, [(d.alpha, d.beta) for d in other.digits])


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_term(alpha: Fraction, beta: Fraction) -> str:
    """alpha/beta as written in expansions: -1/(881/3), (-1/3)/11, 2/2"""
    def part(value):
        text = format_fraction(value)
        return text if Fraction(value).denominator == 1 else f"({text})"
    return f"{part(alpha)}/{part(beta)}"


def _sign(j: int) -> int:
    return 1 if j % 2 == 1 else -1      # (-1)^(j+1)


class _ConvergentRecurrence:
    """P_k = beta_k P_{k-1} + alpha_{k-1} P_{k-2}, same for Q"""

    def __init__(self, beta0: Fraction):
        self.P = (Fraction(1), Fraction(beta0))
        self.Q = (Fraction(0), Fraction(1))

    def push(self, alpha_prev: Fraction, beta: Fraction):
        self.P = (self.P[1], beta * self.P[1] + alpha_prev * self.P[0])
        self.Q = (self.Q[1], beta * self.Q[1] + alpha_prev * self.Q[0])

    def current(self, k: int, n: Optional[int]) -> GcfConvergent:
        P, Q = self.P[1], self.Q[1]
        if Q == 0:
            raise DivergentConvergent(f"Q_{k} = 0")
        value = P / Q
        return GcfConvergent(k, value.numerator, value.denominator, n)


def iter_socf(region: Region, src: TailSource, cap: int = None,
              with_theta: bool = False) -> Iterator[SocfRecord]:
    """
    Stream the expansion of x = src with respect to the region

    Record k carries (alpha_k, beta_k), the displayed term alpha_{k-1}/beta_k
    (none for k = 0), the hitting time j_k, n(k) = (digits consumed) - 1,
    and P_k/Q_k. With with_theta the exact or certified Θ(x, P_k/Q_k) is
    attached.

    Raises:
        NeverHitsWithinCap, UndecidableAtBudget, PrecisionExhausted, SourceExhausted
    """
    if src.depth != 0:
        raise BadParameter("expansion needs a fresh source at depth 0")
    step = induced_step(region, start_point(src), cap)
    consumed = step.j
    beta = Fraction(step.r, step.s)
    alpha = Fraction(_sign(step.j), step.s)
    recurrence = _ConvergentRecurrence(beta)
    n = consumed - 1
    yield SocfRecord(0, alpha, beta, None, step.j, n, recurrence.current(0, n), step,
                     theta(src, consumed) if with_theta else None)
    k = 0
    while True:
        previous = step
        step = induced_step(region, previous.z_next, cap)
        k += 1
        consumed += step.j
        alpha_prev = alpha
        alpha = Fraction(_sign(step.j) * previous.s, step.s)
        beta = previous.q + Fraction(previous.s * step.r, step.s)
        recurrence.push(alpha_prev, beta)
        n = consumed - 1
        yield SocfRecord(k, alpha, beta, format_term(alpha_prev, beta), step.j, n,
                         recurrence.current(k, n), step,
                         theta(src, consumed) if with_theta else None)


def socf_digits(region: Region, src: TailSource, K: int, cap: int = None) -> SocfExpansion:
    """
    beta_0, alpha_0 and K pairs (alpha_k, beta_k), using K+1 induced steps
    """
    if K < 1:
        raise BadParameter(f"K must be >= 1, got {K}")
    records = []
    for record in iter_socf(region, src, cap):
        records.append(record)
        if record.k == K:
            break
    first = records[0]
    expansion = SocfExpansion(
        label=region.label,
        beta0=first.beta,
        alpha0=first.alpha,
        digits=[GcfDigit(r.k, r.alpha, r.beta) for r in records[1:]],
        convergents=[r.convergent for r in records],
        hit_indices=[r.n for r in records],
        steps=[r.step for r in records],
    )
    logger.debug(f"{region.label}: {expansion.display()}")
    return expansion


def q_block(src: TailSource, m: int, n: int) -> int:
    """
    q_[m,n], the lower-right entry of M_m ... M_n

    q_[m,m-1] = 1 (empty product) and q_[0,n] = p_n (M_0 = [[0,1],[1,0]]).
    """
    if n == m - 1:
        return 1
    if n < m - 1 or m < 0:
        raise BadParameter(f"invalid block [{m}, {n}]")
    if m == 0:
        return src.p(n)
    return product_of_digits(src.digit_slice(m - 1, n)).q


def socf_digits_oracle(src: TailSource, hit_indices: Sequence[int], K: int) -> SocfExpansion:
    """
    Contraction of the RCF of x along n_0 < n_1 < ... from block continuants

    alpha_k = (-1)^(n_k - n_{k-1} + 1) q_[n_{k-2}+2, n_{k-1}] / q_[n_{k-1}+2, n_k]
    beta_k  = q_[n_{k-2}+2, n_k] / q_[n_{k-1}+2, n_k]
    with n_k = k for k < 0.
    """
    if K < 1 or len(hit_indices) < K + 1:
        raise BadParameter(f"need at least K+1 = {K + 1} indices, got {len(hit_indices)}")
    indices = list(hit_indices[:K + 1])
    if indices[0] < 0 or any(b <= a for a, b in zip(indices, indices[1:])):
        raise BadParameter(f"hit indices must be non-negative and strictly increasing: {indices}")

    def n_at(k):
        return k if k < 0 else indices[k]

    alphas, betas = [], []
    for k in range(K + 1):
        n2, n1, n0 = n_at(k - 2), n_at(k - 1), n_at(k)
        denominator = q_block(src, n1 + 2, n0)
        sign = 1 if (n0 - n1 + 1) % 2 == 0 else -1
        alphas.append(Fraction(sign * q_block(src, n2 + 2, n1), denominator))
        betas.append(Fraction(q_block(src, n2 + 2, n0), denominator))

    digits = [GcfDigit(k, alphas[k], betas[k]) for k in range(1, K + 1)]
    convergents = gcf_convergents(betas[0], alphas[0], digits, K, indices)
    return SocfExpansion('oracle', betas[0], alphas[0], digits, convergents, indices)


def gcf_convergents(beta0, alpha0, digits: Sequence[GcfDigit], K: int = None,
                    hit_indices: Sequence[int] = None) -> List[GcfConvergent]:
    """
    P_0/Q_0 ... P_K/Q_K of [beta0; alpha0/beta_1, alpha_1/beta_2, ...]

    Raises:
        DivergentConvergent: if some Q_k vanishes
    """
    K = len(digits) if K is None else K
    if K > len(digits):
        raise BadParameter(f"only {len(digits)} digits for K = {K}")

    def n_at(k):
        return hit_indices[k] if hit_indices is not None and k < len(hit_indices) else None

    recurrence = _ConvergentRecurrence(Fraction(beta0))
    result = [recurrence.current(0, n_at(0))]
    alpha_prev = Fraction(alpha0)
    for k in range(1, K + 1):
        digit = digits[k - 1]
        recurrence.push(alpha_prev, digit.beta)
        result.append(recurrence.current(k, n_at(k)))
        alpha_prev = digit.alpha
    return result


def rcf_as_gcf(src: TailSource, K: int) -> Tuple[Fraction, Fraction, List[GcfDigit]]:
    """The RCF written as [0; 1/a_1, 1/a_2, ...]"""
    src.advance_to(K)
    return Fraction(0), Fraction(1), [GcfDigit(k, Fraction(1), Fraction(src.digit(k))) for k in range(1, K + 1)]
