"""Error taxonomy shared across the library and the CLI.

Validation errors mean the request itself is bad (malformed input, schema
violations, out-of-range parameters, unsupported combinations).  Numerical
errors mean a well-formed request could not be completed reliably.
The CLI maps these onto exit codes 2 and 3 respectively.
"""


class CanhamError(Exception):
    """Base class for everything raised deliberately by this package."""


class ValidationError(CanhamError):
    """Bad input: schema violations, invalid measures, unsupported requests."""


class NumericalError(CanhamError):
    """A computation failed to meet its accuracy or consistency contract."""


class IllPosedError(NumericalError):
    """The problem is numerically degenerate (e.g. nearly singular minors)."""


class AccuracyError(NumericalError):
    """A quadrature or iteration did not converge to the requested tolerance."""


class ConsistencyError(NumericalError):
    """Two independent computations of the same quantity disagree."""
