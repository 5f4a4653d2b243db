"""Exception hierarchy shared by all solver modules."""


class AnnulusEigenError(Exception):
    """Base class for errors raised by this package."""


class DomainError(AnnulusEigenError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ConvergenceError(AnnulusEigenError, ArithmeticError):
    """A series or iteration failed to converge within its budget."""


class SearchError(AnnulusEigenError):
    """An eigenvalue scan found no sign change in its search range."""


class DegenerateError(AnnulusEigenError, ArithmeticError):
    """A shooting quotient hit a zero denominator."""


class IntegrationError(AnnulusEigenError, ArithmeticError):
    """A quadrature produced a non-finite value."""


class MeshError(AnnulusEigenError):
    """A generated mesh violates orientation or tagging invariants."""


class AssemblyError(AnnulusEigenError):
    """Matrix assembly failed (degenerate element, indefinite Gram matrix)."""


class SolverError(AnnulusEigenError):
    """An iterative linear or eigen solver did not converge."""
