"""Eigenvalue computations for Steklov and Neumann problems on annular domains."""

from .errors import (
    AnnulusEigenError,
    AssemblyError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    IntegrationError,
    MeshError,
    SearchError,
    SolverError,
)
from .reports import Certificate, CheckReport

__version__ = "0.1.0"

__all__ = [
    "AnnulusEigenError", "AssemblyError", "ConvergenceError", "DegenerateError",
    "DomainError", "IntegrationError", "MeshError", "SearchError", "SolverError",
    "Certificate", "CheckReport", "__version__",
]
