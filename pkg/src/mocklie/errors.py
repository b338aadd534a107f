"""Exception hierarchy shared by every module."""


class MockLieError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(MockLieError, ValueError):
    pass


class DimMismatch(MockLieError, ValueError):
    pass


class ArityMismatch(MockLieError, ValueError):
    pass


class Singular(MockLieError, ArithmeticError):
    def __init__(self, rank, size):
        self.rank = rank
        self.size = size
        super().__init__(f"matrix of size {size} is singular (rank={rank})")


class AxiomViolation(MockLieError, ValueError):
    """An object failed the axioms required to construct it.

    ``report`` holds the :class:`~mocklie.checks.AxiomReport` with the
    first violation.
    """

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class InvalidAlgebra(AxiomViolation):
    pass


class InvalidRepresentation(AxiomViolation):
    pass


class NotAntiAssociative(AxiomViolation):
    pass


class NotMockPreLie(AxiomViolation):
    pass


class NotOOperator(AxiomViolation):
    pass


class FormNotAdmissible(AxiomViolation):
    pass


class NotSymplectic(AxiomViolation):
    pass


class NotSkew(MockLieError, ValueError):
    pass


class NotMatchedPair(AxiomViolation):
    pass


class NotBialgebra(AxiomViolation):
    pass


class PostconditionFailed(MockLieError, AssertionError):
    """A construction produced an object violating its stated guarantee."""


class BundleError(MockLieError, ValueError):
    """Problem with an input bundle; ``location`` is a JSON-path-like string."""

    def __init__(self, message, location=""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ParseError(BundleError):
    pass


class ValidationError(BundleError):
    pass


class UnknownVerb(MockLieError, ValueError):
    pass
