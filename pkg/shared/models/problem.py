"""Cauchy problem data: right-hand side catalog and problem definition.

Every builtin right-hand side knows its exact Lipschitz constants
M (in u) and M* (in v), so problems built from the catalog never rely on
user-declared constants. The solver works with weighted values
u_w = w^μ·u and F_w = w^μ·F; `RhsSpec.weighted` evaluates w^μ·f in those
variables, including the t = a limit where w^μ = 0.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from shared.errors import ProblemError
from shared.models.kernel import PsiKernel, builtin_kernels
from shared.models.order import FractionalOrder

RhsCallback = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

# Tolerance for a zero power exponent in weighted power_source values
EXPONENT_TOL = 1.0e-12
# Relative slack when comparing declared and exact Lipschitz constants
LIPSCHITZ_RTOL = 1.0e-12

RHS_KINDS = (
    "power_source",
    "linear_in_u",
    "implicit_contraction",
    "example5",
    "custom_callback",
)

# Arity of params per builtin kind
_PARAM_COUNTS = {
    "power_source": 2,
    "linear_in_u": 1,
    "implicit_contraction": 2,
    "example5": 0,
    "custom_callback": 0,
}


@dataclass(frozen=True)
class RhsSpec:
    """Right-hand side f(t, u, v) of the implicit problem.

    Kinds and params:
        power_source: [c, δ], f = c·w^{δ-1}
        linear_in_u: [λ], f = λ·u
        implicit_contraction: [g0, c], f = g0 + c·v with |c| < 1
        example5: [], f = 1/((1 + 9e^t)(1 + |u| + |v|))
        custom_callback: [], f = callback(t, u, v) (library use only)

    Attributes:
        kind: One of RHS_KINDS
        params: Coefficients for the kind
        callback: Vectorised f(t, u, v) for custom_callback
        psi_a: ψ(a), needed by power_source to form w (set by ProblemSpec)
        kernel_eval: ψ, needed by power_source (set by ProblemSpec)
    """
    kind: str
    params: tuple[float, ...] = ()
    callback: RhsCallback | None = None
    kernel_eval: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    psi_a: float = 0.0

    def __post_init__(self):
        if self.kind not in RHS_KINDS:
            raise ProblemError(
                f"Unknown rhs kind '{self.kind}'",
                context={"kind": self.kind, "available": list(RHS_KINDS)},
            )
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        expected = _PARAM_COUNTS[self.kind]
        if len(params) != expected:
            raise ProblemError(
                f"rhs kind '{self.kind}' takes {expected} parameter(s), got {len(params)}",
                context={"kind": self.kind, "params": list(params)},
            )
        if not all(math.isfinite(p) for p in params):
            raise ProblemError("rhs parameters must be finite", {"params": list(params)})
        if self.kind == "power_source" and not params[1] > 0.0:
            raise ProblemError("power_source needs δ > 0", {"delta": params[1]})
        if self.kind == "implicit_contraction" and not abs(params[1]) < 1.0:
            raise ProblemError("implicit_contraction needs |c| < 1", {"c": params[1]})
        if self.kind == "custom_callback" and self.callback is None:
            raise ProblemError("custom_callback rhs needs a callback")

    def bind(self, kernel: PsiKernel) -> "RhsSpec":
        return replace(self, kernel_eval=kernel.eval, psi_a=kernel.psi_a)

    def exact_lipschitz(self) -> tuple[float, float] | None:
        """(M, M*) for builtin kinds, None for custom callbacks."""
        if self.kind == "power_source":
            return 0.0, 0.0
        if self.kind == "linear_in_u":
            return abs(self.params[0]), 0.0
        if self.kind == "implicit_contraction":
            return 0.0, abs(self.params[1])
        if self.kind == "example5":
            # |∂f/∂u|, |∂f/∂v| <= 1/(1 + 9e^t) <= 1/10 for t >= 0
            return 0.1, 0.1
        return None

    def __call__(self, t, u, v) -> np.ndarray:
        """Unweighted f(t, u, v), vectorised."""
        t = np.asarray(t, dtype=float)
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if self.kind == "power_source":
            c, delta = self.params
            w = np.asarray(self.kernel_eval(t), dtype=float) - self.psi_a
            return c * w ** (delta - 1.0) + 0.0 * u
        if self.kind == "linear_in_u":
            return self.params[0] * u + 0.0 * v
        if self.kind == "implicit_contraction":
            g0, c = self.params
            return g0 + c * v + 0.0 * u
        if self.kind == "example5":
            return 1.0 / ((1.0 + 9.0 * np.exp(t)) * (1.0 + np.abs(u) + np.abs(v)))
        return np.asarray(self.callback(t, u, v), dtype=float)

    def weighted(self, t, weight, u_w, F_w, mu: float) -> np.ndarray:
        """w^μ·f(t, u, F) in weighted variables.

        Args:
            t: Times
            weight: w(t)^μ at those times
            u_w: Weighted solution values
            F_w: Weighted values of the implicit argument v
            mu: Weight exponent of F (that of u for every kind but power_source)

        Returns:
            Weighted right-hand side values; at w^μ = 0 the t -> a limit
        """
        t = np.asarray(t, dtype=float)
        weight = np.asarray(weight, dtype=float)
        u_w = np.asarray(u_w, dtype=float)
        F_w = np.asarray(F_w, dtype=float)
        if mu == 0.0:
            return self(t, u_w, F_w)

        if self.kind == "linear_in_u":
            return self.params[0] * u_w + 0.0 * F_w
        if self.kind == "implicit_contraction":
            g0, c = self.params
            return g0 * weight + c * F_w

        if self.kind == "power_source":
            c, delta = self.params
            w = np.asarray(self.kernel_eval(t), dtype=float) - self.psi_a
            exponent = delta - 1.0 + mu
            positive = w > 0.0
            value = c * np.where(positive, w, 1.0) ** exponent
            limit = c if abs(exponent) <= EXPONENT_TOL else 0.0
            return np.where(positive, value, limit) + 0.0 * F_w

        positive = weight > 0.0

        # Bounded f: w^μ·f -> 0 as t -> a
        safe = np.where(positive, weight, 1.0)
        inner = weight * self(t, u_w / safe, F_w / safe)
        return np.where(positive, inner, 0.0)


@dataclass(frozen=True)
class ProblemSpec:
    """Implicit Cauchy problem D^{α,β;ψ}u = f(t, u, D^{α,β;ψ}u), I^{1-γ;ψ}u(a) = u_a.

    Attributes:
        order: Fractional order (α, β)
        kernel: ψ kernel and interval [a, b]
        u_a: Initial value I^{1-γ;ψ}u(a)
        rhs: Right-hand side
        lipschitz_M: Lipschitz constant in u (exact for builtins when omitted)
        lipschitz_Mstar: Lipschitz constant in v, must be < 1
    """
    order: FractionalOrder
    kernel: PsiKernel
    u_a: float
    rhs: RhsSpec
    lipschitz_M: float | None = None
    lipschitz_Mstar: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.u_a):
            raise ProblemError("u_a must be finite", {"u_a": self.u_a})
        object.__setattr__(self, "rhs", self.rhs.bind(self.kernel))

        exact = self.rhs.exact_lipschitz()
        M, Mstar = self.lipschitz_M, self.lipschitz_Mstar
        if M is None or Mstar is None:
            if exact is None:
                raise ProblemError("custom_callback problems must declare M and M*")
            M = exact[0] if M is None else M
            Mstar = exact[1] if Mstar is None else Mstar
        object.__setattr__(self, "lipschitz_M", float(M))
        object.__setattr__(self, "lipschitz_Mstar", float(Mstar))

        if not self.lipschitz_M >= 0.0:
            raise ProblemError("M must be nonnegative", {"M": self.lipschitz_M})
        if not 0.0 <= self.lipschitz_Mstar < 1.0:
            raise ProblemError(
                "M* must satisfy 0 <= M* < 1 for the implicit right-hand side to be solvable",
                context={"Mstar": self.lipschitz_Mstar},
            )
        if exact is not None:
            self._check_declared(*exact)
        if self.rhs.kind == "power_source":
            delta = self.rhs.params[1]
            if delta < self.order.gamma - self.order.alpha - EXPONENT_TOL:
                raise ProblemError(
                    "power_source needs δ >= γ - α so that u lies in the weighted space",
                    context={"delta": delta, "gamma": self.order.gamma, "alpha": self.order.alpha},
                )

    def _check_declared(self, exact_M: float, exact_Mstar: float) -> None:
        """Declared constants may exceed the exact ones but not undercut them."""
        if self.lipschitz_M < exact_M * (1.0 - LIPSCHITZ_RTOL):
            raise ProblemError(
                f"M = {self.lipschitz_M:g} is below the Lipschitz constant {exact_M:g} of {self.rhs.kind}",
                context={"M": self.lipschitz_M, "exact_M": exact_M},
            )
        if self.lipschitz_Mstar < exact_Mstar * (1.0 - LIPSCHITZ_RTOL):
            raise ProblemError(
                f"M* = {self.lipschitz_Mstar:g} is below the Lipschitz constant {exact_Mstar:g} of {self.rhs.kind}",
                context={"Mstar": self.lipschitz_Mstar, "exact_Mstar": exact_Mstar},
            )

    @property
    def gamma(self) -> float:
        return self.order.gamma

    @property
    def weight_exponent(self) -> float:
        return self.order.weight_exponent

    @property
    def rhs_weight_exponent(self) -> float:
        """Weight of F: 1 - γ, or 1 - δ for a power_source with δ < γ."""
        if self.rhs.kind == "power_source":
            return max(self.weight_exponent, 1.0 - self.rhs.params[1])
        return self.weight_exponent

    @property
    def lipschitz_ratio(self) -> float:
        """L = M / (1 - M*)."""
        return self.lipschitz_M / (1.0 - self.lipschitz_Mstar)

    def with_initial(self, u_a: float) -> "ProblemSpec":
        return replace(self, u_a=u_a)

    def with_order(self, order: FractionalOrder) -> "ProblemSpec":
        return replace(self, order=order)

    def describe(self) -> dict:
        return {
            "kernel": self.kernel.label,
            "a": self.kernel.a,
            "b": self.kernel.b,
            "alpha": self.order.alpha,
            "beta": self.order.beta,
            "gamma": self.order.gamma,
            "u_a": self.u_a,
            "rhs": self.rhs.kind,
            "rhs_params": list(self.rhs.params),
            "M": self.lipschitz_M,
            "Mstar": self.lipschitz_Mstar,
        }


def example5_problem(u_a: float = 1.0) -> ProblemSpec:
    """ψ(t) = √(t+1) on [0, 1], α = 1/2, β = 1/3 (γ = 2/3), f = 1/((1+9e^t)(1+|u|+|v|))."""
    return ProblemSpec(
        order=FractionalOrder(alpha=0.5, beta=1.0 / 3.0),
        kernel=builtin_kernels("sqrt_shift", 0.0, 1.0),
        u_a=u_a,
        rhs=RhsSpec("example5"),
    )
