"""ψ-fractional integral and derivative operators on graded meshes.

All operators take and return WeightedGridFunction values. Integrals keep
the input weight exponent μ. Derivatives D^p h = (1/ψ′)(d/dt) I^{1-p}h
return weight μ + p, which is the exponent that keeps the leading
w^{-μ-p} behaviour of the derivative finite.

Two differentiation schemes are available:
    product: the product-integration formula for I^{1-p}h is differentiated
        exactly in the target point, so the only approximation is the
        piecewise-linear interpolant of h (default)
    stencil: three-point differences in t of the regularised quotient
        I^{1-p}h / w^{1-p-μ}, one-sided at the ends
"""

from dataclasses import dataclass, field

import numpy as np

from shared.errors import (
    DomainError,
    MeshMismatch,
    OrderError,
    QuadratureError,
    WeightTooSingular,
)
from shared.logging import get_logger
from shared.models import FractionalOrder, GradedMesh, PsiKernel, WeightedGridFunction
from shared.models.grid_function import extrapolate_start
from shared.special import gamma_fn, log_gamma

from services.calculus.quadrature import ProductWeights, hat_weights

logger = get_logger("calculus")

SCHEMES = ("product", "stencil")
# Tolerance for recognising a solution-space input (μ = 1 - γ)
WEIGHT_MATCH_TOL = 1.0e-12


def _check_mesh(kernel: PsiKernel, mesh: GradedMesh) -> None:
    same = mesh.kernel is kernel or (
        mesh.kernel.label == kernel.label and mesh.kernel.a == kernel.a and mesh.kernel.b == kernel.b
    )
    if not same:
        raise MeshMismatch(
            "Mesh was built for a different kernel",
            context={"kernel": kernel.label, "mesh_kernel": mesh.kernel.label},
        )
    if not mesh.starts_at_origin:
        raise MeshMismatch(
            "Operator meshes must start at the kernel's left endpoint",
            context={"first_node": float(mesh.nodes[0]), "a": kernel.a},
        )


@dataclass(frozen=True, eq=False)
class FracIntegralOperator:
    """I^{α;ψ} on a fixed mesh, with weight tables cached per input weight.

    Attributes:
        kernel: ψ kernel
        alpha: Order, any alpha > 0
        mesh: Mesh starting at the kernel's left endpoint
    """
    kernel: PsiKernel
    alpha: float
    mesh: GradedMesh
    _tables: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise OrderError("Integral order must be positive", {"alpha": self.alpha})
        _check_mesh(self.kernel, self.mesh)

    def table(self, mu: float, out_mu: float | None = None) -> ProductWeights:
        """Weights for inputs of weight exponent mu, output weight out_mu (built once)."""
        out_mu = mu if out_mu is None else out_mu
        table = self._tables.get((mu, out_mu))
        if table is None:
            logger.debug(f"Building I^{self.alpha:g} weights: N={self.mesh.N}, mu={mu:g}, out_mu={out_mu:g}")
            table = ProductWeights(self.mesh.w, self.alpha, mu, out_mu)
            self._tables[(mu, out_mu)] = table
        return table

    def __call__(self, h: WeightedGridFunction) -> WeightedGridFunction:
        return frac_integral(self, h)


def frac_integral(
    op: FracIntegralOperator, h: WeightedGridFunction, out_mu: float | None = None
) -> WeightedGridFunction:
    """(I^{α;ψ}h)(t_j) at every node, weighted with out_mu (default: the weight of h).

    out_mu may be lowered to μ - α, the weight at which I^{α;ψ} of a
    w^{-μ} singularity stays bounded.

    Raises:
        MeshMismatch: If h does not live on op.mesh
        WeightTooSingular: If the weight exponent is not below 1, or out_mu
            lies outside [μ - α, μ]
    """
    op.mesh.require_same(h.mesh)
    if h.weight_exponent >= 1.0:
        raise WeightTooSingular("Input weight must be below 1", {"mu": h.weight_exponent})
    table = op.table(h.weight_exponent, out_mu)
    return WeightedGridFunction(op.mesh, table.out_mu, table.apply(h.values))


def power_rule_exact(kernel: PsiKernel, alpha: float, delta: float, t):
    """Γ(δ)/Γ(δ+α)·(ψ(t) - ψ(a))^{α+δ-1}, the exact I^{α;ψ} of w^{δ-1}.

    Args:
        kernel: ψ kernel
        alpha: Order, alpha >= 0 (0 is the identity)
        delta: Power, delta > 0
        t: Time(s) with t > a

    Raises:
        DomainError: On delta <= 0, alpha < 0 or t <= a
    """
    if not delta > 0.0:
        raise DomainError("Power rule needs δ > 0", {"delta": delta})
    if not alpha >= 0.0:
        raise DomainError("Power rule needs α >= 0", {"alpha": alpha})
    tt = np.asarray(t, dtype=float)
    if np.any(tt <= kernel.a):
        raise DomainError("Power rule is evaluated for t > a", {"a": kernel.a})
    w = kernel.w(tt)
    value = np.exp(log_gamma(delta) - log_gamma(delta + alpha) + (alpha + delta - 1.0) * np.log(w))
    if np.ndim(t) == 0:
        return float(value)
    return value


def power_rule_weighted(
    mesh: GradedMesh, alpha: float, delta: float, mu: float
) -> WeightedGridFunction:
    """Exact I^{α;ψ}w^{δ-1} on every node of mesh, weighted with mu."""
    coef = float(np.exp(log_gamma(delta) - log_gamma(delta + alpha))) if alpha > 0 else 1.0
    return WeightedGridFunction.power(mesh, alpha + delta - 1.0, mu, scale=coef)


# Derivatives


def _lower_weight(mesh: GradedMesh, values: np.ndarray, mu_from: float, mu_to: float):
    """Rescale interior values by w^{mu_to - mu_from} and extrapolate t_0."""
    w = mesh.w
    out = np.empty_like(values)
    out[1:] = values[1:] * w[1:] ** (mu_to - mu_from)
    out[0] = extrapolate_start(w, out)
    return WeightedGridFunction(mesh, mu_to, out, endpoint_extrapolated=True)


def _start_value(v0: float, q: float, mu: float) -> float:
    """t -> a limit of w^{μ+1-q}·d/dw I^q h for h ~ v0·w^{-μ}."""
    return (q - mu) * v0 * float(np.exp(log_gamma(1.0 - mu) - log_gamma(q + 1.0 - mu)))


def _product_derivative(table: ProductWeights, values: np.ndarray) -> np.ndarray:
    q, mu = table.q, table.mu
    inv_gamma = 1.0 / gamma_fn(q)
    out = np.empty_like(values)
    out[0] = _start_value(values[0], q, mu)
    for j in range(1, len(values)):
        s, M0, M1 = table.moments(j)
        v = values[: j + 1]
        c = hat_weights(s, M0, M1)
        slopes = np.diff(v) / np.diff(s)
        out[j] = ((q - mu) * (c @ v) + M1 @ slopes) * inv_gamma
    return out


def _stencil_derivative(
    table: ProductWeights, mesh: GradedMesh, values: np.ndarray
) -> np.ndarray:
    q, mu = table.q, table.mu
    w = mesh.w
    g_w = table.apply(values)
    regular = np.empty_like(g_w)
    regular[1:] = g_w[1:] / w[1:] ** q
    regular[0] = values[0] * float(np.exp(log_gamma(1.0 - mu) - log_gamma(q + 1.0 - mu)))
    slope = np.gradient(regular, mesh.nodes, edge_order=2) / mesh.kernel.deriv(mesh.nodes)
    return (q - mu) * regular + w * slope


def _derivative_values(
    mesh: GradedMesh,
    h: WeightedGridFunction,
    order: float,
    scheme: str,
    tables: dict | None = None,
) -> tuple[np.ndarray, float]:
    """Weighted D^{order}h values and their weight exponent μ + order."""
    if scheme not in SCHEMES:
        raise QuadratureError(f"Unknown derivative scheme '{scheme}'", {"scheme": scheme})
    q = 1.0 - order
    mu = h.weight_exponent
    key = (q, mu)
    table = None if tables is None else tables.get(key)
    if table is None:
        table = ProductWeights(mesh.w, q, mu)
        if tables is not None:
            tables[key] = table
    if scheme == "product":
        values = _product_derivative(table, h.values)
    else:
        values = _stencil_derivative(table, mesh, h.values)
    return values, mu + order


def rl_derivative(
    kernel: PsiKernel,
    alpha: float,
    mesh: GradedMesh,
    h: WeightedGridFunction,
    scheme: str = "product",
) -> WeightedGridFunction:
    """D^{α;ψ}h = (1/ψ′)(d/dt) I^{1-α;ψ}h for 0 < α < 1.

    The result carries weight μ + α; when that reaches 1 it is returned
    with the input weight μ instead and t_0 is extrapolated.
    """
    if not 0.0 < alpha < 1.0:
        raise OrderError("RL derivative is implemented for 0 < α < 1", {"alpha": alpha})
    _check_mesh(kernel, mesh)
    mesh.require_same(h.mesh)
    values, mu_out = _derivative_values(mesh, h, alpha, scheme)
    if mu_out < 1.0 - WEIGHT_MATCH_TOL:
        return WeightedGridFunction(mesh, mu_out, values)
    return _lower_weight(mesh, values, mu_out, h.weight_exponent)


def caputo_derivative(
    kernel: PsiKernel,
    alpha: float,
    mesh: GradedMesh,
    h: WeightedGridFunction,
    scheme: str = "product",
) -> WeightedGridFunction:
    """ψ-Caputo derivative D^{α;ψ}[h - h(a)] for continuous h (weight 0).

    Raises:
        WeightTooSingular: If h is not given with weight exponent 0
    """
    if h.weight_exponent != 0.0:
        raise WeightTooSingular(
            "Caputo derivative needs a continuous input (weight 0)",
            context={"mu": h.weight_exponent},
        )
    shifted = h.with_values(h.values - h.values[0])
    return rl_derivative(kernel, alpha, mesh, shifted, scheme)


@dataclass(frozen=True, eq=False)
class HilferOperator:
    """D^{α,β;ψ} = I^{β(1-α);ψ} D^{γ;ψ} on a fixed mesh.

    Attributes:
        kernel: ψ kernel
        order: Fractional order (α, β)
        mesh: Mesh starting at the kernel's left endpoint
        scheme: Differentiation scheme, product or stencil
    """
    kernel: PsiKernel
    order: FractionalOrder
    mesh: GradedMesh
    scheme: str = "product"
    _tables: dict = field(default_factory=dict, init=False, repr=False)
    outer_integral: FracIntegralOperator | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        _check_mesh(self.kernel, self.mesh)
        if self.scheme not in SCHEMES:
            raise QuadratureError(f"Unknown derivative scheme '{self.scheme}'", {"scheme": self.scheme})
        if self.order.outer_order > 0.0:
            # I^{β(1-α);ψ}; None when β = 0
            outer = FracIntegralOperator(self.kernel, self.order.outer_order, self.mesh)
            object.__setattr__(self, "outer_integral", outer)

    def __call__(self, h: WeightedGridFunction) -> WeightedGridFunction:
        return hilfer_derivative(self, h)


def hilfer_derivative(op: HilferOperator, h: WeightedGridFunction) -> WeightedGridFunction:
    """D^{α,β;ψ}h at every node.

    Solution-space inputs (μ = 1 - γ, 0 < β < 1) are differentiated as
    D^{α;ψ}[h - v_0·w^{γ-1}], where v_0 is the weighted start value. The
    operator annihilates w^{γ-1}, so only the regular remainder is
    differenced and the result carries weight
    1 - β(1-α) < 1 without extrapolation. Other inputs go through
    I^{β(1-α);ψ} D^{γ;ψ}h. β = 1 is evaluated as the Caputo derivative and
    needs μ = 0.

    Raises:
        WeightTooSingular: If μ + γ >= 1 for an input outside the solution space
    """
    op.mesh.require_same(h.mesh)
    order = op.order
    if order.is_caputo:
        return caputo_derivative(op.kernel, order.alpha, op.mesh, h, op.scheme)

    in_solution_space = abs(h.weight_exponent - order.weight_exponent) <= WEIGHT_MATCH_TOL
    if in_solution_space and order.beta > 0.0:
        remainder = h.with_values(h.values - h.values[0])
        values, mu_out = _derivative_values(op.mesh, remainder, order.alpha, op.scheme, op._tables)
        return WeightedGridFunction(op.mesh, mu_out, values)

    values, mu_out = _derivative_values(op.mesh, h, order.gamma, op.scheme, op._tables)
    if mu_out < 1.0 - WEIGHT_MATCH_TOL:
        inner = WeightedGridFunction(op.mesh, mu_out, values)
    elif in_solution_space:
        inner = _lower_weight(op.mesh, values, mu_out, 1.0 - order.alpha)
    else:
        raise WeightTooSingular(
            "D^γ of this input is too singular for the weighted representation",
            context={"mu": h.weight_exponent, "gamma": order.gamma},
        )

    outer = op.outer_integral
    if outer is None:
        return inner
    result = frac_integral(outer, inner)
    if inner.endpoint_extrapolated:
        return WeightedGridFunction(result.mesh, result.weight_exponent, result.values, True)
    return result
