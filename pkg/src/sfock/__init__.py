"""Exact Fock-space quantization, dual-pair reduction and orbit-closure quantum spaces."""

from .errors import ConsistencyError, DimensionError, RejectedInput, SfockError
from .scalar import I, ONE, ZERO, Scalar
from .poly import ExpVec, Poly, diff, evaluate, poisson
from .linalg import exact_rank

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "DimensionError", "RejectedInput", "SfockError",
    "I", "ONE", "ZERO", "Scalar", "ExpVec", "Poly", "diff", "evaluate", "poisson",
    "exact_rank", "__version__",
]
