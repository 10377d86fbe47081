"""Exception and warning types shared by the package."""


class VertexError(Exception):
    """Base class for all package errors."""


class SingularWeight(VertexError, ZeroDivisionError):
    """A weight or denominator vanishes within the genericity tolerance."""


class SamplingFailed(VertexError):
    """Rejection sampling could not produce generic parameters."""


class SizeLimit(VertexError):
    """The requested lattice exceeds the configured state-space budget."""


class DivisionByZero(VertexError, ZeroDivisionError):
    """A normalising quantity (e.g. a partition function) is numerically zero."""


class NoSolution(VertexError):
    """A linear identity could not be satisfied to the required residual."""


class ShapeError(VertexError, ValueError):
    """Malformed matrix or operator layout."""


class DivisionByZeroJet(VertexError, ZeroDivisionError):
    """Division by a truncated series whose constant term vanishes."""


class ParseError(VertexError, ValueError):
    """A parameter file could not be parsed."""


class ConfigError(VertexError, ValueError):
    """Invalid command line configuration."""


class PrecisionLoss(UserWarning):
    """A computation was carried out on an ill-conditioned matrix."""
