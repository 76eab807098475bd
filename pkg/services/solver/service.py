"""SOLVER Service - Picard solution of implicit ψ-Hilfer Cauchy problems.

The domain is split into subintervals on which the Picard operator
contracts. The first subinterval gets a graded mesh, the others uniform
meshes, and all of them are joined into one global mesh. On subinterval
k >= 1 the convolution over earlier subintervals is evaluated once with
the converged right-hand side there and frozen, so only the local unknowns
iterate.
"""

from dataclasses import dataclass, field

import numpy as np

from shared.errors import ErrorHandler, NonConvergence, SpecialFunctionError
from shared.logging import get_logger
from shared.models import (
    GradedMesh,
    ProblemSpec,
    WeightedGridFunction,
    default_grading,
    graded_nodes,
    weighted_sup_norm,
)
from shared.special import MlSeriesPolicy, mittag_leffler

from services.calculus import FracIntegralOperator, ProductWeights, frac_integral
from services.solver.config import SolveConfig, get_default_config
from services.solver.partition import Partition, partition_domain
from services.solver.picard import (
    picard_sweep,
    seed_iterate,
    seed_weight,
    weighted_inner_fixed_point,
)

logger = get_logger("solver")


@dataclass(frozen=True)
class BoundCertificate:
    """A-priori information attached to a solve.

    Attributes:
        contraction_constants: η_k of the partition
        sensitivity: w^{1-γ}·|u - u*| per unit change of u_a at t = b,
            i.e. E_{α,γ}(L·w(b)^α); None if the series argument is out of range
    """
    contraction_constants: tuple[float, ...]
    sensitivity: float | None


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Result of solve_cauchy.

    Attributes:
        problem: Problem solved
        solution: Weighted solution (weight 1 - γ) on the global mesh
        rhs_values: F_u on the global mesh, weighted with problem.rhs_weight_exponent
        partition: Contraction partition used
        picard_iters_per_interval: Sweeps per subinterval
        residual_history: Successive differences ‖u_k - u_{k-1}‖ per subinterval
        final_residual: ‖u - T(u)‖ in the weighted sup-norm
        nodal_residual: |u - T(u)| per node (weighted)
        converged: False only on reports carried by NonConvergence
        certificate: A-priori bound information
    """
    problem: ProblemSpec
    solution: WeightedGridFunction
    rhs_values: WeightedGridFunction
    partition: Partition
    picard_iters_per_interval: tuple[int, ...]
    residual_history: tuple[tuple[float, ...], ...]
    final_residual: float
    nodal_residual: np.ndarray = field(repr=False)
    converged: bool = True
    certificate: BoundCertificate | None = None

    @property
    def mesh(self) -> GradedMesh:
        return self.solution.mesh

    def observed_ratios(self, floor: float = 0.0) -> list[float]:
        """r_{k+1}/r_k for successive differences above floor, all subintervals."""
        ratios = []
        for history in self.residual_history:
            for prev, cur in zip(history, history[1:]):
                if prev > floor and cur > 0.0:
                    ratios.append(cur / prev)
        return ratios


def volterra_residual(
    problem: ProblemSpec,
    u: WeightedGridFunction,
    F: WeightedGridFunction | np.ndarray,
    integral: FracIntegralOperator | None = None,
) -> float:
    """max_j |u - u_0 - I^{α;ψ}F| in the weighted norm.

    Args:
        problem: Cauchy problem
        u: Candidate solution, weight 1 - γ
        F: Right-hand side values (weighted with problem.rhs_weight_exponent if a plain array)
        integral: Cached I^{α;ψ} on u.mesh
    """
    return weighted_sup_norm(_defect(problem, u, F, integral))


def _defect(problem, u, F, integral=None) -> WeightedGridFunction:
    mesh = u.mesh
    if not isinstance(F, WeightedGridFunction):
        F = WeightedGridFunction(mesh, problem.rhs_weight_exponent, np.asarray(F, dtype=float))
    integral = integral or FracIntegralOperator(problem.kernel, problem.order.alpha, mesh)
    return u - seed_iterate(problem, mesh) - frac_integral(integral, F, u.weight_exponent)


def estimate_lipschitz(
    problem: ProblemSpec,
    samples: int = 2000,
    spread: float = 10.0,
    seed: int = 0,
) -> tuple[float, float]:
    """Sampled difference quotients of f in u and in v.

    Points are drawn deterministically from [a, b] × [-spread, spread]^2. A
    warning is logged when the declared constants are exceeded.

    Returns:
        (largest quotient in u, largest quotient in v)
    """
    rng = np.random.default_rng(seed)
    kernel = problem.kernel
    t = rng.uniform(kernel.a, kernel.b, samples)
    t = np.where(t == kernel.a, kernel.b, t)
    u1, u2, v1, v2 = rng.uniform(-spread, spread, (4, samples))
    f = problem.rhs
    with np.errstate(divide="ignore", invalid="ignore"):
        qu = np.abs(f(t, u1, v1) - f(t, u2, v1)) / np.abs(u1 - u2)
        qv = np.abs(f(t, u1, v1) - f(t, u1, v2)) / np.abs(v1 - v2)
    M_est = float(np.nanmax(qu))
    Mstar_est = float(np.nanmax(qv))
    slack = 1.0 + 1.0e-9
    if M_est > problem.lipschitz_M * slack or Mstar_est > problem.lipschitz_Mstar * slack:
        logger.warning(
            f"Declared Lipschitz constants look too small: M={problem.lipschitz_M} "
            f"(sampled {M_est:.4g}), M*={problem.lipschitz_Mstar} (sampled {Mstar_est:.4g})"
        )
    return M_est, Mstar_est


def build_solution_mesh(problem: ProblemSpec, partition: Partition, cfg: SolveConfig) -> GradedMesh:
    """Graded first subinterval, uniform later ones, joined into one mesh."""
    r = cfg.grading_r or default_grading(problem.gamma)
    pieces = []
    for k, (lo, hi) in enumerate(partition.intervals()):
        grading = r if k == 0 else 1.0
        nodes = graded_nodes(lo, hi, cfg.mesh_N, grading)
        pieces.append(GradedMesh.from_nodes(problem.kernel, nodes, grading_exponent=grading))
    return GradedMesh.concatenate(pieces)


def _certificate(problem: ProblemSpec, partition: Partition, policy: MlSeriesPolicy) -> BoundCertificate:
    w_b = float(problem.kernel.w(problem.kernel.b))
    z = problem.lipschitz_ratio * w_b ** problem.order.alpha
    try:
        sensitivity = float(mittag_leffler(problem.order.alpha, problem.gamma, z, policy))
    except SpecialFunctionError:
        sensitivity = None
    return BoundCertificate(partition.contraction_constants, sensitivity)


def _solve_single(problem, mesh, cfg):
    """Whole-mesh Picard sweeps (one contraction interval)."""
    integral = FracIntegralOperator(problem.kernel, problem.order.alpha, mesh)
    u = seed_iterate(problem, mesh)
    F = None
    history = []
    for _ in range(cfg.picard_max_iters):
        u_new, F = picard_sweep(problem, mesh, u, F, cfg, integral)
        diff = weighted_sup_norm(u_new - u)
        history.append(diff)
        u = u_new
        logger.debug(f"Sweep {len(history)}: difference {diff:.3e}")
        if diff <= cfg.picard_tol:
            return u.values, F.values, [history], True, integral
    return u.values, F.values, [history], False, integral


def _solve_piecewise(problem, mesh, partition, cfg):
    """Subinterval-by-subinterval sweeps with frozen history."""
    mu_F = problem.rhs_weight_exponent
    table = ProductWeights(mesh.w, problem.order.alpha, mu_F, problem.weight_exponent)
    weight = mesh.w ** mu_F
    seed = seed_weight(problem)
    n = len(mesh.nodes)
    u_w = np.full(n, seed)
    F_w = np.zeros(n)
    histories = []
    converged = True

    for k in range(partition.K):
        lo, hi = k * cfg.mesh_N, (k + 1) * cfg.mesh_N
        first = 0 if k == 0 else lo + 1
        idx = np.arange(first, hi + 1)
        local = np.zeros((len(idx), len(idx)))
        frozen = np.zeros(len(idx))
        for row_pos, j in enumerate(idx):
            row = table.row(j)
            frozen[row_pos] = row[:first] @ F_w[:first]
            local[row_pos, : row_pos + 1] = row[first:]

        base = seed + frozen
        u_loc = base.copy()
        F_loc = np.full(len(idx), F_w[first - 1] if first > 0 else 0.0)
        history = []
        for _ in range(cfg.picard_max_iters):
            F_loc, _ = weighted_inner_fixed_point(
                problem, mesh.nodes[idx], weight[idx], u_loc, F_loc, cfg
            )
            u_next = base + local @ F_loc
            diff = float(np.max(np.abs(u_next - u_loc)))
            history.append(diff)
            u_loc = u_next
            if diff <= cfg.picard_tol:
                break
        else:
            converged = False

        u_w[idx] = u_loc
        F_w[idx] = F_loc
        histories.append(history)
        logger.info(
            f"Interval {k + 1}/{partition.K}: {len(history)} sweep(s), "
            f"last difference {history[-1]:.3e}"
        )
        if not converged:
            break
    return u_w, F_w, histories, converged, None


def solve_cauchy(problem: ProblemSpec, cfg: SolveConfig | None = None) -> SolveReport:
    """Solve the implicit Cauchy problem by contraction-partitioned Picard iteration.

    Raises:
        NonConvergence: If a subinterval exhausts cfg.picard_max_iters; the
            exception carries the partial report
        InnerDivergence: If the implicit right-hand side does not settle
        DegenerateStep: If no usable partition exists
    """
    cfg = cfg or get_default_config()
    partition = partition_domain(problem, cfg)
    mesh = build_solution_mesh(problem, partition, cfg)
    mu = problem.weight_exponent
    logger.info(
        f"Solving {problem.rhs.kind} on [{problem.kernel.a}, {problem.kernel.b}] "
        f"with order {problem.order}, {len(mesh.nodes)} nodes"
    )

    if partition.K == 1:
        u_w, F_w, histories, converged, integral = _solve_single(problem, mesh, cfg)
    else:
        u_w, F_w, histories, converged, integral = _solve_piecewise(problem, mesh, partition, cfg)

    u = WeightedGridFunction(mesh, mu, u_w)
    mu_F = problem.rhs_weight_exponent
    # F consistent with the final iterate
    F_w, _ = weighted_inner_fixed_point(problem, mesh.nodes, mesh.w ** mu_F, u.values, F_w, cfg)
    F = WeightedGridFunction(mesh, mu_F, F_w)
    defect = _defect(problem, u, F, integral)

    report = SolveReport(
        problem=problem,
        solution=u,
        rhs_values=F,
        partition=partition,
        picard_iters_per_interval=tuple(len(h) for h in histories),
        residual_history=tuple(tuple(h) for h in histories),
        final_residual=weighted_sup_norm(defect),
        nodal_residual=np.abs(defect.values),
        converged=converged,
        certificate=_certificate(problem, partition, cfg.ml_policy),
    )
    if not converged:
        last = histories[-1][-1] if histories and histories[-1] else float("nan")
        raise NonConvergence(
            f"Picard iteration did not reach {cfg.picard_tol:g} in {cfg.picard_max_iters} sweeps",
            context={"interval": len(histories), "last_difference": last},
            report=report,
            residual=last,
        )
    logger.info(
        f"Converged: sweeps {list(report.picard_iters_per_interval)}, "
        f"final residual {report.final_residual:.3e}"
    )
    return report


class SolverService:
    """Service wrapper around solve_cauchy with error handling.

    Example:
        service = SolverService(config=get_default_config())
        report = service.solve(example5_problem())
        report.partition.contraction_constants   # (0.1044...,)
    """

    def __init__(
        self,
        config: SolveConfig | None = None,
        error_handler: ErrorHandler | None = None,
    ):
        self.config = config or get_default_config()
        self.error_handler = error_handler or ErrorHandler("solver")

    def partition(self, problem: ProblemSpec) -> Partition:
        return partition_domain(problem, self.config)

    def solve(self, problem: ProblemSpec) -> SolveReport:
        """Solve and record failures in errors.json before re-raising.

        The declared Lipschitz constants are first compared with sampled
        difference quotients; an understatement is logged as a warning.
        """
        with self.error_handler.wrap(context=problem.describe()):
            estimate_lipschitz(problem)
            return solve_cauchy(problem, self.config)
