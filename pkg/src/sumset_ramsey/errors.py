"""Exception types shared across the package."""


class SumsetRamseyError(Exception):
    """Base class for all package errors."""


class DomainError(SumsetRamseyError):
    """An argument is outside the mathematical domain of the operation."""


class PolynomialError(SumsetRamseyError):
    """Invalid polynomial (nonzero constant term, degree 0, bad leading sign)."""


class ParseError(SumsetRamseyError):
    """Malformed textual input.  Carries the offending position when known."""

    def __init__(self, message: str, text: str = "", pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos} in {text!r})"
        super().__init__(message)
        self.text = text
        self.pos = pos


class EqualPolynomials(DomainError):
    """P and Q coincide, so the growth profile is undefined."""


class NotCaseII(DomainError):
    """The pair does not have equal degree and equal leading coefficient."""


class BadPair(DomainError):
    """Parameters a, b (or a, b, c) do not satisfy 0 < a < b (< c)."""


class BadParams(DomainError):
    """Interval-coloring parameters violate their admissibility constraints."""


class WindowTooSmall(DomainError):
    """Requested window is too small for the construction."""


class InadmissibleA0(DomainError):
    """Explicit base level fails the admissibility checks."""


class NoAdmissibleA0(DomainError):
    """No base level up to the scan limit passes the admissibility checks."""


class EmptyPattern(DomainError):
    """Custom coloring pattern is empty."""


class NoConfiguration(SumsetRamseyError):
    """Search found no configuration, even with a single shift."""


class EmptySet(DomainError):
    """The operation requires a nonempty set."""


class WindowOverrun(DomainError):
    """An index required by the operation lies beyond the materialized window."""


class DivisibilityError(DomainError):
    """Witness parameters violate a divisibility constraint."""


class NonPositiveElement(DomainError):
    """A witness formula emitted an element below 1."""
