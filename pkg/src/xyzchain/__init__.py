"""Antiperiodic and periodic XYZ spin chain: degenerate-point Bethe ansatz,
thermodynamic-limit energies and exact-diagonalization cross-checks."""

__version__ = "0.1.0"

from ._accel import backend  # noqa: E402
from .errors import (  # noqa: E402
    ConsistencyError,
    ConvergenceError,
    DegenerateSeedError,
    DomainError,
    MemoryBudgetError,
    PoleError,
    RealityError,
    TruncationError,
    XYZChainError,
)

__all__ = [
    "__version__",
    "backend",
    "XYZChainError",
    "DomainError",
    "TruncationError",
    "PoleError",
    "RealityError",
    "ConsistencyError",
    "ConvergenceError",
    "DegenerateSeedError",
    "MemoryBudgetError",
]
