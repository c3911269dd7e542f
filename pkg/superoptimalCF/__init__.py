"""
superoptimalCF - Superoptimal continued fractions
Exact expansions induced from the natural extension of the Gauss map,
with checks of their approximation guarantees
"""

__version__ = "1.0.0"

from .core import builtin_region, parse_region, socf_digits, tail_source_from_spec
from .utils.logger import setup_logger

__all__ = [
    'builtin_region',
    'parse_region',
    'socf_digits',
    'tail_source_from_spec',
    'setup_logger'
]
