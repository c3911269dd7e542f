"""
Exception hierarchy for superoptimalCF
Every error carries the exit code the CLI reports for it
"""


class SocfError(Exception):
    """Base class for all library errors"""

    exit_code = 1


class ParseError(SocfError, ValueError):
    """Malformed surd expression, region literal, digit list or decimal string"""

    exit_code = 2


class PrecisionExhausted(SocfError, ArithmeticError):
    """The available enclosure of a tail is too wide to decide what was asked"""

    exit_code = 3


class SourceExhausted(SocfError):
    """An explicit digit list ran out"""

    exit_code = 4


class UndecidableAtBudget(SocfError):
    """A constraint sign still straddles zero after the refinement budget"""

    exit_code = 4


class NeverHitsWithinCap(SocfError):
    """The natural-extension orbit did not enter the region within the cap"""

    exit_code = 5

    def __init__(self, message, cap=None, depth=None):
        super().__init__(message)
        self.cap = cap
        self.depth = depth


class PropertyViolation(SocfError):
    """A verified property failed; the witness is attached"""

    exit_code = 6

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MixedRadicands(SocfError, ArithmeticError):
    """Two surds over different square-free radicands were combined"""


class PoleInInterval(SocfError, ZeroDivisionError):
    """A Möbius denominator vanishes on the input"""


class RationalInput(SocfError, ValueError):
    """A quadratic-surd source was given a rational number"""


class BadParameter(SocfError, ValueError):
    """A parameter lies outside its documented range"""


class DivergentConvergent(SocfError, ZeroDivisionError):
    """A generalised continued fraction produced Q_k = 0"""


class ZeroMeasureRegion(SocfError, ValueError):
    """An operation needs a region of positive measure"""
