"""Continuous-dependence bounds for perturbed order and perturbed initial data.

Order perturbation: u* solves the problem of order (α - ε, β) with
I^{1-γ*;ψ}u*(a) = u_a*, where γ* = γ + ε(β - 1). Then

    |u*(t) - u(t)| <= A(t) + Σ_{k>=1} C^k·I^{k(α-ε);ψ}A(t),
    C = M·Γ(α-ε)/(Γ(α)(1 - M*)),

which is a Gronwall envelope of A. Data perturbation: u* solves the same
problem with u_a + δ and

    |u(t) - u*(t)| <= |δ|·w^{γ-1}·E_{α,γ}(M/(1 - M*)·w^α).

Weighted versions multiply by w^{1-γ*} (order) or w^{1-γ} (data), which
keeps the bounds finite at t = a.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from shared.errors import BoundsError, DomainError
from shared.models import GradedMesh, ProblemSpec, WeightedGridFunction
from shared.special import MlSeriesPolicy, gamma_fn, mittag_leffler

from services.bounds.config import BoundsConfig
from services.bounds.gronwall import GronwallInput, gronwall_envelope


@dataclass(frozen=True)
class OrderPerturbation:
    """Shift of the order α -> α - ε with a new initial value.

    Attributes:
        epsilon: Order shift, 0 < ε < α
        u_a_star: Initial value of the perturbed problem
        f_sup: max |f(t, u, F_u)| over the mesh (None until measured)
    """
    epsilon: float
    u_a_star: float
    f_sup: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise BoundsError("epsilon must be positive", {"epsilon": self.epsilon})
        if not math.isfinite(self.u_a_star):
            raise BoundsError("u_a_star must be finite", {"u_a_star": self.u_a_star})
        if self.f_sup is not None and not self.f_sup >= 0.0:
            raise BoundsError("f_sup must be nonnegative", {"f_sup": self.f_sup})

    def with_f_sup(self, f_sup: float) -> "OrderPerturbation":
        return replace(self, f_sup=f_sup)

    def perturbed_problem(self, problem: ProblemSpec) -> ProblemSpec:
        """Problem of order (α - ε, β) with initial value u_a*."""
        check_epsilon(problem, self.epsilon)
        return problem.with_order(problem.order.shifted(self.epsilon)).with_initial(self.u_a_star)


@dataclass(frozen=True)
class DataPerturbation:
    """Shift of the initial value u_a -> u_a + δ."""
    delta: float

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise BoundsError("delta must be finite", {"delta": self.delta})

    def perturbed_problem(self, problem: ProblemSpec) -> ProblemSpec:
        return problem.with_initial(problem.u_a + self.delta)


def check_epsilon(problem: ProblemSpec, epsilon: float) -> None:
    if not 0.0 < epsilon < problem.order.alpha:
        raise BoundsError(
            "epsilon must satisfy 0 < epsilon < alpha",
            context={"epsilon": epsilon, "alpha": problem.order.alpha},
        )


def perturbed_gamma(problem: ProblemSpec, epsilon: float) -> float:
    """γ* = γ + ε(β - 1)."""
    return problem.gamma + epsilon * (problem.order.beta - 1.0)


def _A_terms(problem: ProblemSpec, pert: OrderPerturbation, w: np.ndarray, weight_exp: float):
    """w^{weight_exp}·A at w > 0 and the t -> a limit at w = 0."""
    if pert.f_sup is None:
        raise BoundsError("OrderPerturbation.f_sup has not been measured")
    check_epsilon(problem, pert.epsilon)
    alpha, eps = problem.order.alpha, pert.epsilon
    gamma = problem.gamma
    gamma_star = perturbed_gamma(problem, eps)

    w = np.asarray(w, dtype=float)
    positive = w > 0.0
    ws = np.where(positive, w, 1.0)

    # Initial-value term, weighted by w^{weight_exp}
    p_star = gamma_star - 1.0 + weight_exp
    p = gamma - 1.0 + weight_exp
    first = np.abs(
        pert.u_a_star * ws ** p_star / gamma_fn(gamma_star) - problem.u_a * ws ** p / gamma_fn(gamma)
    )
    first_limit = abs(
        (pert.u_a_star / gamma_fn(gamma_star) if abs(p_star) < 1e-14 else 0.0)
        - (problem.u_a / gamma_fn(gamma) if abs(p) < 1e-14 else 0.0)
    )
    first = np.where(positive, first, first_limit)

    ae = alpha - eps
    g_ae, g_a = gamma_fn(ae), gamma_fn(alpha)
    c1 = abs(1.0 / gamma_fn(ae + 1.0) - 1.0 / (g_ae * g_a))
    middle = pert.f_sup * c1 * ws ** (ae + weight_exp)
    last = pert.f_sup * np.abs(
        ws ** (ae + weight_exp) / (g_ae * g_a) - ws ** (alpha + weight_exp) / gamma_fn(alpha + 1.0)
    )
    rest = np.where(positive, middle + last, 0.0)
    return first + rest


def order_dependence_A(problem: ProblemSpec, pert: OrderPerturbation, t: float) -> float:
    """A(t) of the order-dependence bound, evaluated as written.

    Raises:
        DomainError: At t <= a, where the initial-value term is singular
    """
    kernel = problem.kernel
    if not t > kernel.a:
        raise DomainError("A(t) is evaluated only for t > a", {"t": t, "a": kernel.a})
    w = float(kernel.w(t))
    return float(_A_terms(problem, pert, np.array([w]), 0.0)[0])


def order_dependence_A_weighted(
    problem: ProblemSpec, pert: OrderPerturbation, mesh: GradedMesh
) -> WeightedGridFunction:
    """w^{1-γ*}·A on the mesh, finite at t = a."""
    mu_star = 1.0 - perturbed_gamma(problem, pert.epsilon)
    return WeightedGridFunction(mesh, mu_star, _A_terms(problem, pert, mesh.w, mu_star))


def order_gronwall_input(
    problem: ProblemSpec, pert: OrderPerturbation, mesh: GradedMesh
) -> GronwallInput:
    """Gronwall data whose envelope is the order-dependence bound."""
    alpha, eps = problem.order.alpha, pert.epsilon
    # (h·Γ(α-ε))^k = (M·Γ(α-ε)/(Γ(α)(1 - M*)))^k
    h = problem.lipschitz_ratio / gamma_fn(alpha)
    return GronwallInput(
        v=order_dependence_A_weighted(problem, pert, mesh),
        h=h,
        alpha=alpha - eps,
        kernel=problem.kernel,
    )


def order_dependence_bound(
    problem: ProblemSpec,
    pert: OrderPerturbation,
    mesh: GradedMesh,
    K_terms: int | None = None,
    cfg: BoundsConfig | None = None,
) -> WeightedGridFunction:
    """Weighted order-dependence bound w^{1-γ*}·(A + series) at every node.

    Raises:
        SeriesCap: If the series needs more than K_terms terms
    """
    return gronwall_envelope(order_gronwall_input(problem, pert, mesh), K_terms, cfg)


def data_dependence_bound(
    problem: ProblemSpec, pert: DataPerturbation, t: float, policy: MlSeriesPolicy | None = None
) -> float:
    """|δ|·w^{γ-1}·E_{α,γ}(L·w^α) at a single point.

    Raises:
        DomainError: At t = a when γ < 1
    """
    kernel = problem.kernel
    w = float(kernel.w(t))
    if w <= 0.0 and problem.gamma < 1.0:
        raise DomainError("Data bound is singular at t = a for γ < 1", {"t": t})
    if w < 0.0:
        raise DomainError("t lies left of a", {"t": t, "a": kernel.a})
    if pert.delta == 0.0:
        return 0.0
    ml = mittag_leffler(
        problem.order.alpha, problem.gamma, problem.lipschitz_ratio * w ** problem.order.alpha, policy
    )
    singular = 1.0 if problem.gamma == 1.0 else w ** (problem.gamma - 1.0)
    return abs(pert.delta) * singular * float(ml)


def data_dependence_weighted(
    problem: ProblemSpec,
    pert: DataPerturbation,
    mesh: GradedMesh,
    policy: MlSeriesPolicy | None = None,
) -> WeightedGridFunction:
    """w^{1-γ}·bound = |δ|·E_{α,γ}(L·w^α) at every node."""
    z = problem.lipschitz_ratio * mesh.w ** problem.order.alpha
    values = abs(pert.delta) * np.asarray(mittag_leffler(problem.order.alpha, problem.gamma, z, policy))
    return WeightedGridFunction(mesh, problem.weight_exponent, values)
