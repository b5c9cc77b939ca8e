"""Numerical verification of sharp Hausdorff-Young, Young and entropy
inequalities on the binary cube ``{0,1}^d``."""

from .errors import DomainError, NumericalFailure, UsageError
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "DomainError", "NumericalFailure", "UsageError", "__version__"]
