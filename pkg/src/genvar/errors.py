"""Exception hierarchy.

``ValidationError`` covers malformed input (the CLI maps it to exit code 1);
``PreconditionError`` covers well-formed input that an operation's hypotheses
reject (exit code 3).
"""


class GenvarError(ValueError):
    pass


class ValidationError(GenvarError):
    pass


class LengthMismatchError(ValidationError):
    pass


class NonMonotoneGridError(ValidationError):
    pass


class NonFiniteValueError(ValidationError):
    pass


class GridMismatchError(ValidationError):
    pass


class PartitionError(ValidationError):
    pass


class SpacingError(PartitionError):
    """Consecutive partition points closer than the required spacing d."""


class PreconditionError(GenvarError):
    pass


class NonUniformGridError(PreconditionError):
    pass


class OriginError(PreconditionError):
    """Grid does not start at 0."""


class DomainTooShortError(PreconditionError):
    pass


class IntervalTooShortError(PreconditionError):
    pass


class ExponentError(PreconditionError):
    pass


class BassInequalityError(PreconditionError):
    """Input violates f(x) <= f(y) + c*(y - x)**p for some grid pair."""


class SizeCapError(PreconditionError):
    pass
