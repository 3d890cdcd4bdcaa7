"""Exception hierarchy shared across the package."""


class IntervalNestError(Exception):
    """Base class for all intervalnest errors."""


class ParseError(IntervalNestError):
    """Malformed input document."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RangeError(ParseError):
    """Vertex index outside the declared range."""


class NotIntervalError(IntervalNestError):
    """The graph admits no interval representation."""


class NotChordalError(NotIntervalError):
    """The graph is not even chordal (no perfect elimination ordering)."""


class OrderingNotConsecutiveError(IntervalNestError):
    """A clique ordering violates the consecutivity requirement."""


class CapExceededError(IntervalNestError):
    """An enumeration grew past its configured cap; results would be incomplete."""


class MalformedCodeError(IntervalNestError):
    """A bit code violates prefix balance or label pairing."""


class StaleAnnotationError(IntervalNestError):
    """An annotation was produced for a different graph."""
