"""ψ kernel model and builtin kernel catalog."""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from shared.errors import KernelDerivativeMismatch, KernelError, UnknownKernel

ArrayFn = Callable[[np.ndarray], np.ndarray]

# Finite-difference spot check: step relative to (b - a), tolerance relative to 1 + |ψ′|
FD_STEP = 1.0e-5
FD_TOL = 1.0e-6


@dataclass(frozen=True)
class PsiKernel:
    """Strictly increasing kernel function ψ on [a, b].

    Attributes:
        eval: t -> ψ(t), vectorised over numpy arrays
        deriv: t -> ψ′(t), vectorised over numpy arrays
        a: Left endpoint
        b: Right endpoint
        label: Identifier used in logs and reports
    """
    eval: ArrayFn
    deriv: ArrayFn
    a: float
    b: float
    label: str = "custom"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise KernelError("Kernel endpoints must be finite", {"a": self.a, "b": self.b})
        if not self.a < self.b:
            raise KernelError("Kernel requires a < b", {"a": self.a, "b": self.b})

    @property
    def psi_a(self) -> float:
        """ψ(a), the origin of the weight w = ψ(t) - ψ(a)."""
        return float(np.asarray(self.eval(np.asarray(self.a, dtype=float))))

    def w(self, t) -> np.ndarray:
        """w(t) = ψ(t) - ψ(a)."""
        return np.asarray(self.eval(np.asarray(t, dtype=float)), dtype=float) - self.psi_a

    def check_derivative(self, t) -> float:
        """Spot-check deriv against a second-order difference of eval.

        Central differences are used where t ± h stays inside [a, b] and
        one-sided three-point differences otherwise, so callbacks defined only
        on [a, b] are never sampled outside it.

        Args:
            t: Sample points in [a, b]

        Returns:
            Largest scaled discrepancy found

        Raises:
            KernelDerivativeMismatch: If any discrepancy exceeds FD_TOL
        """
        t = np.atleast_1d(np.asarray(t, dtype=float))
        h = FD_STEP * (self.b - self.a)
        f = self.eval

        central = (f(t + h) - f(t - h)) / (2.0 * h)
        forward = (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h)
        backward = (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h)
        fd = np.where(t - h < self.a, forward, np.where(t + h > self.b, backward, central))

        d = np.asarray(self.deriv(t), dtype=float)
        scaled = np.abs(fd - d) / (1.0 + np.abs(d))
        worst = float(np.max(scaled))
        if worst > FD_TOL:
            j = int(np.argmax(scaled))
            raise KernelDerivativeMismatch(
                f"ψ′ of kernel '{self.label}' disagrees with a finite difference of ψ",
                context={"t": float(t[j]), "deriv": float(d[j]), "finite_difference": float(fd[j])},
            )
        return worst


def _linear(a: float, b: float) -> PsiKernel:
    return PsiKernel(
        eval=lambda t: np.asarray(t, dtype=float),
        deriv=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        a=a,
        b=b,
        label="linear",
    )


def _sqrt_shift(a: float, b: float) -> PsiKernel:
    if a <= -1.0:
        raise KernelError("sqrt_shift kernel requires a > -1", {"a": a})
    return PsiKernel(
        eval=lambda t: np.sqrt(np.asarray(t, dtype=float) + 1.0),
        deriv=lambda t: 0.5 / np.sqrt(np.asarray(t, dtype=float) + 1.0),
        a=a,
        b=b,
        label="sqrt_shift",
    )


def _exp(a: float, b: float) -> PsiKernel:
    return PsiKernel(
        eval=lambda t: np.exp(np.asarray(t, dtype=float)),
        deriv=lambda t: np.exp(np.asarray(t, dtype=float)),
        a=a,
        b=b,
        label="exp",
    )


BUILTIN_KERNELS: dict[str, Callable[[float, float], PsiKernel]] = {
    "linear": _linear,
    "sqrt_shift": _sqrt_shift,
    "exp": _exp,
}


def builtin_kernels(name: str, a: float, b: float) -> PsiKernel:
    """Look up a builtin kernel on [a, b].

    Args:
        name: One of linear (ψ = t), sqrt_shift (ψ = √(t+1)), exp (ψ = e^t)
        a: Left endpoint
        b: Right endpoint

    Raises:
        UnknownKernel: If name is not in the catalog
    """
    factory = BUILTIN_KERNELS.get(name)
    if factory is None:
        raise UnknownKernel(
            f"Unknown kernel '{name}'",
            context={"name": name, "available": sorted(BUILTIN_KERNELS)},
        )
    return factory(float(a), float(b))
