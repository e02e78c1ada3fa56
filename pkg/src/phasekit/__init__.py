"""Phase operators, mutually unbiased bases and quadratic/fractional DFTs."""

from ._kernels import BACKEND
from .numerics import PhaseExponent, PhasekitError

__version__ = "0.1.0"

__all__ = ["BACKEND", "PhaseExponent", "PhasekitError", "__version__"]
