"""Exact Schur-function and lattice-path identities, and XX0 chain correlators."""

__version__ = "0.1.0"

from .errors import IdentityMismatch, NestcorrError, ValidationError
from .qcore import QPoly

__all__ = ["__version__", "QPoly", "NestcorrError", "ValidationError", "IdentityMismatch"]
