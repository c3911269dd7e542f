"""Core business logic modules"""

from .errors import (SocfError, ParseError, PrecisionExhausted, SourceExhausted,
                     UndecidableAtBudget, NeverHitsWithinCap, PropertyViolation)
from .surd import SurdValue, surd_compare
from .expr import parse_surd, parse_rational
from .tail_source import (QuadraticSurdTail, ExplicitDigitsTail, DecimalTail, IntervalTail,
                          convergents, theta, tail_source_from_spec)
from .regions import Region, builtin_region, measure, measure_bounds
from .region_dsl import parse_region
from .natural_extension import start_point, ne_step, induced_step, hitting_time
from .contraction import iter_socf, socf_digits, socf_digits_oracle, gcf_convergents
from .analytics import verify_superoptimal, legendre_exactness, borel_window_check, ergodic_stats

__all__ = [
    'SocfError', 'ParseError', 'PrecisionExhausted', 'SourceExhausted',
    'UndecidableAtBudget', 'NeverHitsWithinCap', 'PropertyViolation',
    'SurdValue', 'surd_compare', 'parse_surd', 'parse_rational',
    'QuadraticSurdTail', 'ExplicitDigitsTail', 'DecimalTail', 'IntervalTail',
    'convergents', 'theta', 'tail_source_from_spec',
    'Region', 'builtin_region', 'measure', 'measure_bounds', 'parse_region',
    'start_point', 'ne_step', 'induced_step', 'hitting_time',
    'iter_socf', 'socf_digits', 'socf_digits_oracle', 'gcf_convergents',
    'verify_superoptimal', 'legendre_exactness', 'borel_window_check', 'ergodic_stats',
]
