"""
exceptions raised by defectprop

All package errors derive from :class:`DefectPropError` so the CLI can map
them onto exit codes.
"""


class DefectPropError(Exception):
    """Base class of every defectprop error."""

    pass


class DomainError(DefectPropError, ValueError):
    """An argument lies outside the domain of the operation."""

    pass


class OnAxis(DomainError):
    """Evaluation requested on the defect line r = 0."""

    pass


class FallToCenter(DomainError):
    """
    The inverse-square channel is too attractive (negative radicand of mu).

    Attributes:
        m: angular quantum number of the offending channel (may be None)
        radicand: value of 4(m + xi)^2 + sigma^2 - 1 + kappa
    """

    def __init__(self, radicand, m=None):
        """Record the offending channel."""
        self.radicand = radicand
        self.m = m
        where = "" if m is None else f" in channel m={m}"
        super().__init__(f"fall to the center{where}: radicand={radicand!r} < 0")


class NonConvergence(DefectPropError, ArithmeticError):
    """A series did not reach its tolerance within the allowed number of terms."""

    pass


class TailTooLarge(DefectPropError):
    """
    A truncated sum or integral has an estimated tail above tolerance.

    Attributes:
        estimate: relative size of the neglected tail
    """

    def __init__(self, message, estimate=None):
        """Keep the tail estimate for callers."""
        self.estimate = estimate
        super().__init__(message)


class QuadratureFailure(DefectPropError):
    """Adaptive quadrature could not meet the requested tolerance."""

    pass


class GridTooCoarse(DefectPropError):
    """Finite-difference grid is too coarse or too short for the request."""

    pass


class ConfigError(DefectPropError):
    """
    Configuration could not be parsed or failed validation.

    Attributes:
        field: dotted path of the offending field (e.g. ``defect.gamma``)
        line: 1-based line number, for parse errors
    """

    def __init__(self, message, field=None, line=None):
        """Attribute the error to a field and/or line."""
        self.field = field
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field is not None:
            prefix += f"{field}: "
        super().__init__(prefix + message)
