"""Exception types shared across the package."""


class LmlabError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(LmlabError):
    """A parameter violates its documented domain."""


class DimensionMismatchError(LmlabError):
    """Vectors or matrices have incompatible dimensions."""


class CapExceededError(LmlabError):
    """A brute-force guardrail (enumeration, pair or cell cap) would be exceeded."""


class TooFewCodewordsError(LmlabError):
    """The operation needs at least two codewords."""


class SingularMatrixError(LmlabError):
    """A generator matrix is not full rank."""


class HypothesesUnmetError(LmlabError):
    """The hypotheses of the underlying statement do not hold for these inputs."""


class PreconditionViolatedError(LmlabError):
    """Input data violates an operation precondition."""


class BoundaryUncertainError(LmlabError):
    """Interval arithmetic could not separate a value from a decision boundary."""
