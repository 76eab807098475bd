"""Error handling for the ψ-Hilfer toolkit.

Provides custom exceptions and an error handler that writes to errors.json.
When an error occurs, details are saved for debugging and the exception is
re-raised so the caller can map it to an exit code.

Example:
    from shared.errors import ErrorHandler, NonConvergence

    handler = ErrorHandler(service_name="solver")

    with handler.wrap(context={"config": "example5.conf"}):
        solve_cauchy(problem, cfg)
"""

from shared.errors.exceptions import (
    # Base
    HilferError,
    # Kernel / order / mesh
    KernelError,
    NonMonotoneKernel,
    UnknownKernel,
    KernelDerivativeMismatch,
    OrderError,
    MeshError,
    InvalidGrading,
    MeshMismatch,
    ProblemError,
    # Numerical
    SpecialFunctionError,
    DomainError,
    ConvergenceError,
    QuadratureError,
    WeightTooSingular,
    SolverError,
    InnerDivergence,
    NonConvergence,
    DegenerateStep,
    BoundsError,
    SeriesCap,
    # Configuration
    ConfigError,
    ConfigNotFoundError,
    ConfigValidationError,
)
from shared.errors.handler import ErrorHandler, create_error_handler

__all__ = [
    # Base
    "HilferError",
    # Kernel / order / mesh
    "KernelError",
    "NonMonotoneKernel",
    "UnknownKernel",
    "KernelDerivativeMismatch",
    "OrderError",
    "MeshError",
    "InvalidGrading",
    "MeshMismatch",
    "ProblemError",
    # Numerical
    "SpecialFunctionError",
    "DomainError",
    "ConvergenceError",
    "QuadratureError",
    "WeightTooSingular",
    "SolverError",
    "InnerDivergence",
    "NonConvergence",
    "DegenerateStep",
    "BoundsError",
    "SeriesCap",
    # Configuration
    "ConfigError",
    "ConfigNotFoundError",
    "ConfigValidationError",
    # Handler
    "ErrorHandler",
    "create_error_handler",
]
