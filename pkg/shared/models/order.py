"""Fractional order (α, β) with derived composite order γ."""

from dataclasses import dataclass, field

from shared.errors import OrderError


@dataclass(frozen=True)
class FractionalOrder:
    """Order α ∈ (0, 1) and type β ∈ [0, 1] of a Hilfer derivative.

    γ = α + β - αβ is always recomputed and cannot be passed in.

    Attributes:
        alpha: Order
        beta: Type (0 gives Riemann-Liouville, 1 gives Caputo)
        gamma: Composite order, alpha <= gamma <= 1
    """
    alpha: float
    beta: float
    gamma: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise OrderError("alpha must lie in (0, 1)", {"alpha": self.alpha})
        if not 0.0 <= self.beta <= 1.0:
            raise OrderError("beta must lie in [0, 1]", {"beta": self.beta})
        object.__setattr__(
            self, "gamma", self.alpha + self.beta - self.alpha * self.beta
        )

    @property
    def weight_exponent(self) -> float:
        """1 - γ, the exponent of the solution space weight."""
        return 1.0 - self.gamma

    @property
    def outer_order(self) -> float:
        """β(1 - α), the order of the integral wrapped around D^γ."""
        return self.beta * (1.0 - self.alpha)

    @property
    def is_caputo(self) -> bool:
        return self.beta == 1.0

    def shifted(self, epsilon: float) -> "FractionalOrder":
        """Order with α replaced by α - ε (same type β)."""
        return FractionalOrder(alpha=self.alpha - epsilon, beta=self.beta)

    def __str__(self) -> str:
        return f"(α={self.alpha:g}, β={self.beta:g}, γ={self.gamma:g})"
