"""
Checks of superoptimality, Legendre exactness and Borel windows, and
seeded ergodic statistics of induced orbits
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Union

import numpy as np

from .contraction import iter_socf
from .errors import (BadParameter, MixedRadicands, NeverHitsWithinCap, PrecisionExhausted,
                     UndecidableAtBudget, ZeroMeasureRegion)
from .intervals import RatInterval
from .natural_extension import g_value, ne_step, start_point
from .parallel_processor import make_sampler
from .regions import Region, contained_in_g_sublevel, contains, legendre, measure
from .surd import ONE_OVER_SQRT5, Ordering, SurdValue, surd_compare
from .tail_source import TailSource, random_interval_tail, theta
from ..config.settings import Settings

logger = logging.getLogger(__name__)

Value = Union[SurdValue, RatInterval, Fraction]

LOG2 = math.log(2)
PI_SQUARED = math.pi ** 2


# -- exact comparisons and formatting -------------------------------------------

def _surd_bounds(value: SurdValue, bits: int) -> RatInterval:
    scale = 1 << bits
    lo = (value * scale).floor()
    return RatInterval(Fraction(lo, scale), Fraction(lo + 1, scale))


def compare_value(value: Value, threshold) -> Optional[Ordering]:
    """
    Exact ordering of a Θ value against a threshold surd

    Intervals are compared through their endpoints; None when an interval
    straddles the threshold.
    """
    threshold = SurdValue.coerce(threshold)
    if isinstance(value, RatInterval):
        if surd_compare(value.hi, threshold) is Ordering.LESS:
            return Ordering.LESS
        if surd_compare(value.lo, threshold) is Ordering.GREATER:
            return Ordering.GREATER
        return None
    try:
        return surd_compare(value, threshold)
    except MixedRadicands:
        # elements of different quadratic fields never coincide
        for bits in range(32, 4097, 32):
            ordering = compare_value(_surd_bounds(value, bits), threshold)
            if ordering is not None:
                return ordering
        return None


def upper_bound(value: Value, bits: int = 80) -> Fraction:
    if isinstance(value, RatInterval):
        return value.hi
    value = SurdValue.coerce(value)
    if value.is_rational:
        return value.as_fraction()
    return _surd_bounds(value, bits).hi


def _decimal(value: Fraction, digits: int, upward: bool) -> str:
    scale = 10 ** digits
    scaled = value * scale
    n = -((-scaled.numerator) // scaled.denominator) if upward else scaled.numerator // scaled.denominator
    sign = '-' if n < 0 else ''
    text = str(abs(n)).rjust(digits + 1, '0')
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def enclosure_strings(value: Value, digits: int = 20) -> List[str]:
    """[lo, hi] as decimal strings rounded outward"""
    if isinstance(value, RatInterval):
        return [_decimal(value.lo, digits, False), _decimal(value.hi, digits, True)]
    value = SurdValue.coerce(value)
    if value.is_rational:
        exact = value.as_fraction()
        return [_decimal(exact, digits, False), _decimal(exact, digits, True)]
    bounds = _surd_bounds(value, math.ceil(digits * 3.33) + 8)
    return [_decimal(bounds.lo, digits, False), _decimal(bounds.hi, digits, True)]


def _to_float(value: Value) -> float:
    if isinstance(value, RatInterval):
        return float(value.midpoint)
    return float(value)


# -- superoptimality ------------------------------------------------------------

@dataclass
class ThetaRow:
    k: int
    n: int
    P: int
    Q: int
    theta: Value
    status: str                 # 'ok', 'violation' or 'undecided'

    @property
    def log_q_rate(self) -> Optional[float]:
        return math.log(self.Q) / self.k if self.k > 0 else None

    @property
    def log_error_rate(self) -> Optional[float]:
        """(1/k) log|x - P/Q| = (1/k)(log Θ - 2 log Q)"""
        if self.k == 0:
            return None
        return (math.log(_to_float(self.theta)) - 2 * math.log(self.Q)) / self.k


@dataclass
class SuperoptimalReport:
    """
    Clause (i): Θ(x, P_k/Q_k) <= eps for every k <= K, checked exactly.
    Clause (ii) is asymptotic, so only the finite ratios n(k)/k are given.
    """

    region: str
    source: str
    epsilon: SurdValue
    C: float
    K: int
    rows: List[ThetaRow] = field(default_factory=list)
    region_in_sublevel: Optional[bool] = None
    measure: Optional[float] = None
    stopped_by: Optional[str] = None
    stop_exit_code: Optional[int] = None

    @property
    def speed_ratios(self) -> List[float]:
        return [row.n / row.k for row in self.rows if row.k > 0]

    @property
    def violations(self) -> List[ThetaRow]:
        return [row for row in self.rows if row.status == 'violation']

    @property
    def clause_i(self) -> Optional[bool]:
        if self.stopped_by is not None and not self.rows:
            return None
        if self.violations:
            return False
        if any(row.status == 'undecided' for row in self.rows):
            return None
        return True

    @property
    def measure_hypothesis(self) -> Optional[bool]:
        if self.measure is None:
            return None
        return 0 < self.measure <= 1 / self.C

    @property
    def clause_ii(self) -> str:
        ratios = self.speed_ratios
        if not ratios:
            return 'no data'
        if ratios[-1] >= self.C:
            return f"consistent with liminf n(k)/k >= {self.C:.6g} (finite K)"
        return f"not yet consistent with liminf n(k)/k >= {self.C:.6g} at K = {len(ratios)}"

    @property
    def theta_max(self) -> Optional[List[str]]:
        if not self.rows:
            return None
        upper = max(self.rows, key=lambda row: upper_bound(row.theta))
        return enclosure_strings(upper.theta)

    @property
    def passed(self) -> bool:
        return self.stopped_by is None and self.clause_i is True

    def to_dict(self) -> Dict:
        return {
            'region': self.region,
            'source': self.source,
            'epsilon': str(self.epsilon),
            'C': self.C,
            'K': self.K,
            'k_reached': self.rows[-1].k if self.rows else None,
            'clause_i': self.clause_i,
            'theta_max': self.theta_max,
            'violations': [{'k': r.k, 'P': str(r.P), 'Q': str(r.Q), 'theta': enclosure_strings(r.theta)}
                           for r in self.violations],
            'speed_ratios': self.speed_ratios,
            'clause_ii': self.clause_ii,
            'hypotheses': {
                'region_in_g_sublevel': self.region_in_sublevel,
                'measure': self.measure,
                'measure_at_most_1_over_C': self.measure_hypothesis,
            },
            'stopped_by': self.stopped_by,
            'verdict': 'PASS' if self.passed else 'FAIL',
        }

    def csv_rows(self) -> List[Dict]:
        rows = []
        for row in self.rows:
            lo, hi = enclosure_strings(row.theta)
            rows.append({
                'k': row.k,
                'n_k': row.n,
                'theta_lo': lo,
                'theta_hi': hi,
                'log_Q_over_k': '' if row.log_q_rate is None else f"{row.log_q_rate:.12g}",
            })
        return rows


def verify_superoptimal(src: TailSource, region: Region, epsilon, C: float, K: int,
                        cap: int = None) -> SuperoptimalReport:
    """
    Check Θ(x, P_k/Q_k) <= eps exactly for k = 0..K and report n(k)/k

    An orbit that stops entering the region is recorded in stopped_by
    rather than raised, so the report still shows the prefix reached.
    """
    epsilon = SurdValue.coerce(epsilon)
    report = SuperoptimalReport(region.label, src.label, epsilon, float(C), K)
    report.region_in_sublevel = contained_in_g_sublevel(region, epsilon)
    report.measure = measure(region).value
    try:
        for record in iter_socf(region, src, cap, with_theta=True):
            ordering = compare_value(record.theta, epsilon)
            status = 'undecided' if ordering is None else \
                ('violation' if ordering is Ordering.GREATER else 'ok')
            report.rows.append(ThetaRow(record.k, record.n, record.convergent.P,
                                        record.convergent.Q, record.theta, status))
            if record.k >= K:
                break
    except (NeverHitsWithinCap, UndecidableAtBudget, PrecisionExhausted) as exc:
        report.stopped_by = f"{type(exc).__name__}: {exc}"
        report.stop_exit_code = exc.exit_code
        logger.info(f"superoptimal check stopped: {report.stopped_by}")
    return report


# -- Legendre exactness ------------------------------------------------------------

@dataclass
class LegendreResult:
    epsilon0: Fraction
    holds: bool
    socf_convergents: List[str]
    filtered_convergents: List[str]
    missing: List[str]
    extra: List[str]

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['epsilon0'] = str(self.epsilon0)
        data['verdict'] = 'PASS' if self.holds else 'FAIL'
        return data


def legendre_exactness(src: TailSource, epsilon0, K: int, cap: int = None) -> LegendreResult:
    """
    Compare the first K legendre(eps0) convergents with the RCF convergents
    p_n/q_n (n up to the last SOCF depth) filtered by Θ(x, p_n/q_n) < eps0
    """
    eps = Fraction(epsilon0)
    region = legendre(eps)
    socf = []
    for record in iter_socf(region, src, cap):
        socf.append(record.convergent)
        if len(socf) >= K:
            break
    last = socf[-1].n
    filtered = []
    for n in range(0, last + 1):
        ordering = compare_value(theta(src, n + 1), eps)
        if ordering is None:
            raise PrecisionExhausted(f"Θ(x, p_{n}/q_{n}) not separated from {eps}")
        if ordering is Ordering.LESS:
            filtered.append(src.convergent(n))
    socf_set = {(c.P, c.Q) for c in socf}
    filtered_set = {(c.p, c.q) for c in filtered}
    return LegendreResult(
        epsilon0=eps,
        holds=socf_set == filtered_set,
        socf_convergents=[str(c) for c in socf],
        filtered_convergents=[str(c) for c in filtered],
        missing=[f"{p}/{q}" for p, q in sorted(filtered_set - socf_set, key=lambda t: t[1])],
        extra=[f"{p}/{q}" for p, q in sorted(socf_set - filtered_set, key=lambda t: t[1])],
    )


# -- Borel windows ------------------------------------------------------------------

@dataclass
class BorelResult:
    N: int
    holds: bool
    failures: List[int]
    worst_index: int
    worst_window_min: List[str]

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['verdict'] = 'PASS' if self.holds else 'FAIL'
        return data


def borel_window_check(src: TailSource, N: int) -> BorelResult:
    """
    Every window Θ_n, Θ_{n+1}, Θ_{n+2} (n <= N-2) has a member below 1/sqrt5

    Θ_n = Θ(x, p_n/q_n). The worst window is the one whose minimum comes
    closest to 1/sqrt5.
    """
    if N < 3:
        raise BadParameter(f"N must be >= 3, got {N}")
    thetas = [theta(src, n + 1) for n in range(N + 1)]
    below = []
    for value in thetas:
        ordering = compare_value(value, ONE_OVER_SQRT5)
        if ordering is None:
            raise PrecisionExhausted("Θ value not separated from 1/sqrt(5)")
        below.append(ordering is Ordering.LESS)
    failures = [n for n in range(N - 1) if not any(below[n:n + 3])]
    window_minima = []
    for n in range(N - 1):
        window_minima.append(min(upper_bound(v) for v in thetas[n:n + 3]))
    worst = max(range(N - 1), key=lambda n: window_minima[n])
    worst_value = min(thetas[worst:worst + 3], key=lambda v: upper_bound(v))
    return BorelResult(N, not failures, failures, worst, enclosure_strings(worst_value))


# -- ergodic statistics -----------------------------------------------------------

def levy_target(region_measure: float) -> float:
    """Almost-sure limit of (1/k) log Q_k for the induced expansion"""
    if region_measure <= 0:
        raise ZeroMeasureRegion("Lévy constant needs a region of positive measure")
    return PI_SQUARED / (12 * LOG2 * region_measure)


def entropy_of(region: Region) -> float:
    """Entropy π²/(6 log2 ν(Δ)) of the induced map"""
    mu = measure(region).value
    if mu <= 0:
        raise ZeroMeasureRegion(f"{region.label} has measure zero")
    return PI_SQUARED / (6 * LOG2 * mu)


@dataclass
class ErgodicStats:
    region: str
    sample_count: int
    orbit_length: int
    seed: int
    visits: int
    hits: int
    empirical_frequency: float
    reference_measure: float
    frequency_error: float
    levy_q: Optional[float]
    levy_target: Optional[float]
    levy_err: Optional[float]
    levy_error_rate: Optional[float]
    entropy: Optional[float]
    redraws: int
    frequency_pass: bool
    levy_pass: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.frequency_pass and self.levy_pass is not False

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['summary'] = (
            ("consistent with" if self.frequency_pass else "not consistent with")
            + " equidistribution at this sample size; Lévy slope "
            + ("consistent with" if self.levy_pass else "not consistent with" if self.levy_pass is False else "not measured for")
            + " the predicted constant"
        )
        return data


def _orbit_sample(task) -> Dict:
    """
    One seeded orbit of length orbit_len from z_0 = (x, 0)

    Draws that run out of precision or meet an undecidable boundary are
    redrawn from the same generator and counted.
    """
    region, index, seed_sequence, orbit_len = task
    rng = np.random.default_rng(seed_sequence)
    bits = Settings.random_bits(orbit_len)
    redraws = 0
    while True:
        src = random_interval_tail(rng, bits)
        try:
            z = start_point(src)
            hits = 1 if contains(region, z) else 0
            later_hits = 0
            log_q = log_theta = None
            for _ in range(orbit_len - 1):
                z = ne_step(z)
                if contains(region, z):
                    hits += 1
                    later_hits += 1
                    # a hit at depth d closes the convergent with Q = q_{d-1}, the numerator of y_d
                    log_q = math.log(z.y_num)
                    log_theta = math.log(_to_float(g_value(z)))
            levy = companion = None
            if later_hits >= 2:
                levy = log_q / (later_hits - 1)
                companion = (log_theta - 2 * log_q) / (later_hits - 1)
            return {'index': index, 'status': 'accepted', 'visits': orbit_len, 'hits': hits,
                    'levy': levy, 'levy_error_rate': companion, 'redraws': redraws}
        except (PrecisionExhausted, UndecidableAtBudget) as exc:
            redraws += 1
            logger.debug(f"sample {index}: redraw after {type(exc).__name__}")
            if redraws > Settings.MAX_REDRAWS:
                return {'index': index, 'status': 'failed', 'visits': 0, 'hits': 0,
                        'levy': None, 'levy_error_rate': None, 'redraws': redraws}


def ergodic_stats(region: Region, samples: int, orbit_len: int, seed: int,
                  workers: int = None, progress_callback=None) -> ErgodicStats:
    """
    Hit frequency of the region along natural-extension orbits of random x,
    the empirical Lévy slope (1/k) log Q_k, and the induced entropy
    """
    if samples < 1 or orbit_len < 1:
        raise ValueError("samples and orbit_len must be >= 1")
    children = np.random.SeedSequence(seed).spawn(samples)
    tasks = [(region, i, child, orbit_len) for i, child in enumerate(children)]
    sampler = make_sampler(workers, progress_callback)
    results = sampler.run(_orbit_sample, tasks)

    visits = sum(r['visits'] for r in results)
    hits = sum(r['hits'] for r in results)
    redraws = sum(r['redraws'] for r in results)
    mu = measure(region).value
    frequency = hits / visits if visits else 0.0
    frequency_error = abs(frequency - mu) / mu if mu > 0 else abs(frequency)
    frequency_pass = frequency_error <= Settings.FREQUENCY_TOLERANCE if mu > 0 else frequency == 0.0

    slopes = [r['levy'] for r in results if r['levy'] is not None]
    companions = [r['levy_error_rate'] for r in results if r['levy_error_rate'] is not None]
    levy = float(np.mean(slopes)) if slopes else None
    target = levy_target(mu) if mu > 0 else None
    levy_err = abs(levy - target) / target if levy is not None and target else None
    levy_pass = None if levy_err is None else levy_err <= Settings.LEVY_TOLERANCE

    stats = ErgodicStats(
        region=region.label, sample_count=samples, orbit_length=orbit_len, seed=seed,
        visits=visits, hits=hits, empirical_frequency=frequency, reference_measure=mu,
        frequency_error=frequency_error, levy_q=levy, levy_target=target, levy_err=levy_err,
        levy_error_rate=float(np.mean(companions)) if companions else None,
        entropy=PI_SQUARED / (6 * LOG2 * mu) if mu > 0 else None,
        redraws=redraws, frequency_pass=frequency_pass, levy_pass=levy_pass,
    )
    logger.info(f"stats {region.label}: frequency {frequency:.6f} vs {mu:.6f}, redraws {redraws}")
    return stats
