"""Numerical checks of the ψ-fractional calculus identities.

Each checker evaluates both sides of an identity on a mesh and reports the
largest weighted deviation. Both sides are compared at the larger of their
weight exponents. Checks that involve a numerical derivative skip the first
two nodes and the last node, where the derivative loses accuracy.
"""

from dataclasses import dataclass, field

import numpy as np

from shared.errors import OrderError, WeightTooSingular
from shared.logging import get_logger
from shared.models import (
    FractionalOrder,
    GradedMesh,
    PsiKernel,
    WeightedGridFunction,
    reweight,
    weighted_sup_norm,
)
from shared.special import gamma_fn

from services.calculus.operators import (
    FracIntegralOperator,
    HilferOperator,
    frac_integral,
    hilfer_derivative,
    power_rule_weighted,
    rl_derivative,
)

logger = get_logger("calculus")

DERIVATIVE_SKIP_START = 2
DERIVATIVE_SKIP_END = 1


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check.

    Attributes:
        name: Identity checked
        deviation: Max weighted deviation between the two sides
        weight_exponent: Weight the sides were compared at
        nodes_checked: Number of nodes entering the maximum
        details: Parameters of the check
    """
    name: str
    deviation: float
    weight_exponent: float
    nodes_checked: int
    details: dict = field(default_factory=dict)

    def passed(self, tolerance: float) -> bool:
        return self.deviation <= tolerance


def _compare(
    name: str,
    lhs: WeightedGridFunction,
    rhs: WeightedGridFunction,
    skip_start: int = 0,
    skip_end: int = 0,
    **details,
) -> IdentityReport:
    mu = max(lhs.weight_exponent, rhs.weight_exponent)
    diff = reweight(lhs, mu) - reweight(rhs, mu)
    deviation = weighted_sup_norm(diff, skip_start, skip_end)
    checked = len(diff) - skip_start - skip_end
    logger.info(f"{name}: deviation {deviation:.3e} over {checked} nodes ({details})")
    return IdentityReport(name, deviation, mu, checked, details)


def check_power_rule(
    kernel: PsiKernel, alpha: float, delta: float, mesh: GradedMesh
) -> IdentityReport:
    """frac_integral of w^{δ-1} against its closed form, weight max(0, 1 - δ)."""
    mu = max(0.0, 1.0 - delta)
    h = WeightedGridFunction.power(mesh, delta - 1.0, mu)
    numeric = frac_integral(FracIntegralOperator(kernel, alpha, mesh), h)
    exact = power_rule_weighted(mesh, alpha, delta, mu)
    return _compare(
        "power_rule", numeric, exact,
        kernel=kernel.label, alpha=alpha, delta=delta, N=mesh.N,
    )


def check_semigroup(
    kernel: PsiKernel,
    alpha: float,
    beta_ord: float,
    mesh: GradedMesh,
    h: WeightedGridFunction,
) -> IdentityReport:
    """I^α I^β h against I^{α+β} h."""
    if not (alpha > 0.0 and beta_ord > 0.0):
        raise OrderError("Semigroup check needs positive orders", {"alpha": alpha, "beta": beta_ord})
    inner = frac_integral(FracIntegralOperator(kernel, beta_ord, mesh), h)
    lhs = frac_integral(FracIntegralOperator(kernel, alpha, mesh), inner)
    rhs = frac_integral(FracIntegralOperator(kernel, alpha + beta_ord, mesh), h)
    return _compare(
        "semigroup", lhs, rhs,
        kernel=kernel.label, alpha=alpha, beta=beta_ord, N=mesh.N,
    )


def check_left_inverse(
    kernel: PsiKernel,
    order: FractionalOrder,
    mesh: GradedMesh,
    h: WeightedGridFunction,
    scheme: str = "product",
) -> IdentityReport:
    """D^{α,β} I^α h against h on interior nodes."""
    integral = frac_integral(FracIntegralOperator(kernel, order.alpha, mesh), h)
    lhs = hilfer_derivative(HilferOperator(kernel, order, mesh, scheme), integral)
    return _compare(
        "left_inverse", lhs, h, DERIVATIVE_SKIP_START, DERIVATIVE_SKIP_END,
        kernel=kernel.label, alpha=order.alpha, beta=order.beta, scheme=scheme, N=mesh.N,
    )


def check_thm_expansion(
    kernel: PsiKernel,
    order: FractionalOrder,
    mesh: GradedMesh,
    h: WeightedGridFunction,
    u_a: float,
    scheme: str = "product",
) -> IdentityReport:
    """I^α D^{α,β} h against h - u_a/Γ(γ)·w^{γ-1}.

    u_a is I^{(1-β)(1-α)}h(a), the coefficient of the singular part of h;
    h is expected in the solution space (weight 1 - γ).
    """
    derivative = hilfer_derivative(HilferOperator(kernel, order, mesh, scheme), h)
    lhs = frac_integral(FracIntegralOperator(kernel, order.alpha, mesh), derivative)
    seed = WeightedGridFunction.power(
        mesh, order.gamma - 1.0, order.weight_exponent, scale=u_a / gamma_fn(order.gamma)
    )
    rhs = h - seed
    return _compare(
        "expansion", lhs, rhs, DERIVATIVE_SKIP_START, DERIVATIVE_SKIP_END,
        kernel=kernel.label, alpha=order.alpha, beta=order.beta, u_a=u_a, scheme=scheme, N=mesh.N,
    )


def _first_derivative(g: WeightedGridFunction) -> WeightedGridFunction:
    """(1/ψ′) dg/dt for continuous g (weight 0) by second-order differences."""
    mesh = g.mesh
    slope = np.gradient(g.values, mesh.nodes, edge_order=2) / mesh.kernel.deriv(mesh.nodes)
    return WeightedGridFunction(mesh, 0.0, slope)


def check_composition(
    kernel: PsiKernel,
    order: FractionalOrder,
    mesh: GradedMesh,
    h: WeightedGridFunction,
    scheme: str = "product",
) -> IdentityReport:
    """D^γ I^α h against D^{β(1-α)} h on interior nodes.

    For β = 0 the right side is h itself; for β = 1, D^γ is the ordinary
    ψ-derivative and is taken by differences (h must then have weight 0).
    """
    integral = frac_integral(FracIntegralOperator(kernel, order.alpha, mesh), h)
    if order.gamma < 1.0:
        lhs = rl_derivative(kernel, order.gamma, mesh, integral, scheme)
    else:
        if h.weight_exponent != 0.0:
            raise WeightTooSingular(
                "Composition with γ = 1 needs a continuous input (weight 0)",
                context={"mu": h.weight_exponent},
            )
        lhs = _first_derivative(integral)

    outer = order.outer_order
    rhs = h if outer == 0.0 else rl_derivative(kernel, outer, mesh, h, scheme)
    return _compare(
        "composition", lhs, rhs, DERIVATIVE_SKIP_START, DERIVATIVE_SKIP_END,
        kernel=kernel.label, alpha=order.alpha, beta=order.beta, scheme=scheme, N=mesh.N,
    )
