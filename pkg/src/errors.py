"""
Exceptions raised by the library.
Verification code returns CheckReports instead of raising.
"""


class OddArcError(Exception):
    """Base class for all library errors."""


class SizeError(OddArcError, ValueError):
    """n outside the supported range of an operation."""


class DiagramError(OddArcError, ValueError):
    """Mismatched matchings, bad arcs or malformed chronologies."""


class GeneratorError(OddArcError, KeyError):
    """Exterior generator missing, unmapped or from another generator set."""


class TorsionError(OddArcError, ArithmeticError):
    """A quotient that should be free has a non-unit elementary divisor."""


class CocycleError(OddArcError, ArithmeticError):
    """Coboundary system without solution or inconsistent associator data."""


class GradingError(OddArcError, ArithmeticError):
    """A computed product leaves the quantum degree qdeg(x) + qdeg(y)."""
