"""Picard iteration for the Volterra form of the implicit Cauchy problem.

    u(t) = u_a/Γ(γ)·w^{γ-1} + I^{α;ψ}F_u(t),    F_u(t) = f(t, u(t), F_u(t))

All unknowns are stored weighted with μ = 1 - γ, so the seed is the
constant u_a/Γ(γ) and the right-hand side F_u is resolved node by node by
direct iteration, which contracts at rate M*. A power source w^{δ-1} with
δ < γ keeps F in weight 1 - δ; its integral is still returned in weight μ.
"""

import numpy as np

from shared.errors import InnerDivergence
from shared.logging import get_logger
from shared.models import GradedMesh, ProblemSpec, WeightedGridFunction
from shared.special import gamma_fn

from services.calculus import FracIntegralOperator, frac_integral
from services.solver.config import SolveConfig

logger = get_logger("solver")


def seed_weight(problem: ProblemSpec) -> float:
    """Weighted seed value u_a/Γ(γ)."""
    return problem.u_a / gamma_fn(problem.gamma)


def seed_iterate(problem: ProblemSpec, mesh: GradedMesh) -> WeightedGridFunction:
    """u_0 = u_a/Γ(γ)·w^{γ-1}, i.e. the constant u_a/Γ(γ) in weighted form."""
    return WeightedGridFunction.constant(mesh, seed_weight(problem), problem.weight_exponent)


def _fixed_point(step, F0: np.ndarray, cfg: SolveConfig, where: dict) -> tuple[np.ndarray, int]:
    """Iterate F <- step(F) until every entry satisfies the relative stop test."""
    F = np.array(F0, dtype=float)
    for it in range(1, cfg.inner_max_iters + 1):
        F_new = np.asarray(step(F), dtype=float)
        if not np.all(np.isfinite(F_new)):
            raise InnerDivergence("Implicit right-hand side produced non-finite values", where)
        converged = np.abs(F_new - F) <= cfg.inner_tol * (1.0 + np.abs(F_new))
        F = F_new
        if np.all(converged):
            return F, it
    raise InnerDivergence(
        f"Implicit right-hand side did not settle in {cfg.inner_max_iters} iterations; "
        "the declared M* < 1 does not hold",
        context={**where, "inner_max_iters": cfg.inner_max_iters},
    )


def inner_fixed_point(
    problem: ProblemSpec,
    t: float,
    u_t: float,
    F_init: float,
    cfg: SolveConfig,
) -> float:
    """Solve F = f(t, u_t, F) by direct iteration from F_init (unweighted).

    Raises:
        InnerDivergence: If cfg.inner_max_iters is exceeded
    """
    rhs = problem.rhs
    F, iters = _fixed_point(
        lambda F: rhs(t, u_t, F), np.atleast_1d(F_init), cfg, {"t": t, "u": u_t}
    )
    logger.debug(f"Inner fixed point at t={t:g}: {iters} iteration(s)")
    return float(F[0])


def weighted_inner_fixed_point(
    problem: ProblemSpec,
    t: np.ndarray,
    weight: np.ndarray,
    u_w: np.ndarray,
    F_init: np.ndarray,
    cfg: SolveConfig,
) -> tuple[np.ndarray, int]:
    """Vectorised inner fixed point in weighted variables.

    Args:
        problem: Cauchy problem
        t: Nodes
        weight: w^μ at the nodes, μ the weight of F
        u_w: Weighted solution values
        F_init: Weighted warm start
        cfg: Solver configuration

    Returns:
        (weighted F, iterations used by the slowest node)
    """
    rhs = problem.rhs
    mu = problem.rhs_weight_exponent
    return _fixed_point(
        lambda F: rhs.weighted(t, weight, u_w, F, mu),
        F_init,
        cfg,
        {"t_first": float(t[0]), "t_last": float(t[-1])},
    )


def picard_sweep(
    problem: ProblemSpec,
    mesh: GradedMesh,
    u_prev: WeightedGridFunction,
    F_prev: WeightedGridFunction | None,
    cfg: SolveConfig,
    integral: FracIntegralOperator | None = None,
) -> tuple[WeightedGridFunction, WeightedGridFunction]:
    """One sweep u_new = u_0 + I^{α;ψ}F_{u_prev} on the whole mesh.

    Args:
        problem: Cauchy problem
        mesh: Mesh starting at a
        u_prev: Previous iterate (weight 1 - γ)
        F_prev: Previous right-hand side, used as warm start (None: zeros)
        cfg: Solver configuration
        integral: Cached I^{α;ψ} on mesh

    Returns:
        (u_new, F_{u_prev}); u_new carries weight 1 - γ, F the weight
        problem.rhs_weight_exponent

    Raises:
        InnerDivergence: If the implicit right-hand side does not settle
    """
    mesh.require_same(u_prev.mesh)
    mu_F = problem.rhs_weight_exponent
    integral = integral or FracIntegralOperator(problem.kernel, problem.order.alpha, mesh)
    start = np.zeros(len(mesh.nodes)) if F_prev is None else F_prev.values
    F_values, _ = weighted_inner_fixed_point(
        problem, mesh.nodes, mesh.w ** mu_F, u_prev.values, start, cfg
    )
    F = WeightedGridFunction(mesh, mu_F, F_values)
    u_new = seed_iterate(problem, mesh) + frac_integral(integral, F, problem.weight_exponent)
    return u_new, F
