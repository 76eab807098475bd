"""Custom exceptions for the ψ-Hilfer toolkit.

All exceptions inherit from HilferError for consistent handling.
Family classes tell the caller which layer failed (kernel, mesh, quadrature,
solver, bounds, configuration).
"""


class HilferError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(self, message: str, context: dict | None = None):
        """Initialize the exception.

        Args:
            message: Human-readable error message
            context: Additional context about the error
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}


# Kernel, order and mesh exceptions

class KernelError(HilferError):
    """Errors related to the ψ kernel."""
    pass


class NonMonotoneKernel(KernelError):
    """ψ is not strictly increasing on the sampled nodes."""
    pass


class UnknownKernel(KernelError):
    """Requested builtin kernel does not exist."""
    pass


class KernelDerivativeMismatch(KernelError):
    """Supplied ψ′ disagrees with a finite difference of ψ."""
    pass


class OrderError(HilferError):
    """Invalid fractional order or type."""
    pass


class MeshError(HilferError):
    """Errors related to meshes and grid functions."""
    pass


class InvalidGrading(MeshError):
    """Grading exponent or node count out of range."""
    pass


class MeshMismatch(MeshError):
    """Grid functions or operators live on different meshes."""
    pass


class ProblemError(HilferError):
    """Invalid Cauchy problem or right-hand side."""
    pass


# Numerical exceptions

class SpecialFunctionError(HilferError):
    """Errors from Gamma or Mittag-Leffler evaluation."""
    pass


class DomainError(SpecialFunctionError, ValueError):
    """Argument outside the supported domain."""
    pass


class ConvergenceError(SpecialFunctionError):
    """Series did not converge within its term cap."""
    pass


class QuadratureError(HilferError):
    """Errors from fractional quadrature."""
    pass


class WeightTooSingular(QuadratureError):
    """Weight exponent outside [0, 1)."""
    pass


class SolverError(HilferError):
    """Errors related to the Picard solver."""
    pass


class InnerDivergence(SolverError):
    """Inner fixed point for the implicit right-hand side did not converge."""
    pass


class NonConvergence(SolverError):
    """Picard iteration exhausted its sweep budget."""

    def __init__(
        self,
        message: str,
        context: dict | None = None,
        report=None,
        residual: float | None = None,
    ):
        super().__init__(message, context)
        self.report = report
        self.residual = residual


class DegenerateStep(SolverError):
    """Contraction partition step underflowed."""
    pass


class BoundsError(HilferError):
    """Errors related to Gronwall and dependence bounds."""
    pass


class SeriesCap(BoundsError):
    """Gronwall series needed more terms than allowed."""
    pass


# Configuration exceptions

class ConfigError(HilferError):
    """Errors related to configuration."""
    pass


class ConfigNotFoundError(ConfigError):
    """Configuration file not found."""
    pass


class ConfigValidationError(ConfigError):
    """Configuration validation failed."""
    pass
