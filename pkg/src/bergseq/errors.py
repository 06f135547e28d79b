"""Exception types shared across the library."""


class BergseqError(Exception):
    """Base class for all library errors."""


class DomainViolation(BergseqError):
    """A point lies outside the domain required by the operation."""


class QuadratureNotConverged(BergseqError):
    """Node doubling hit the cap before successive estimates agreed.

    Carries the last two estimates so callers can judge how far off the
    result is.
    """

    def __init__(self, message, last_estimates):
        super().__init__(f"{message}: last estimates {last_estimates!r}")
        self.last_estimates = tuple(last_estimates)


class WindowViolation(BergseqError):
    """A lifted computation would leave the upper half plane."""


class SingularSystem(BergseqError):
    """A Gram system is numerically singular."""
