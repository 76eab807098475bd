"""BOUNDS Service - compare computed solution differences with a-priori bounds.

Both comparisons solve a base and a perturbed problem and report, per node,
the weighted difference, the weighted bound and the margin bound - diff.
"""

from dataclasses import dataclass, field

import numpy as np

from shared.errors import ErrorHandler
from shared.logging import get_logger
from shared.models import GradedMesh, ProblemSpec, WeightedGridFunction, reweight
from shared.special import gamma_fn

from services.bounds.config import BoundsConfig, get_default_config
from services.bounds.dependence import (
    DataPerturbation,
    OrderPerturbation,
    data_dependence_weighted,
    order_dependence_A_weighted,
    order_dependence_bound,
)
from services.solver import SolveConfig, SolveReport, estimate_lipschitz, solve_cauchy

logger = get_logger("bounds")


@dataclass(frozen=True, eq=False)
class DependenceReport:
    """Nodewise comparison of |u - u*| with a dependence bound.

    All arrays are weighted with `weight_exponent`, so the row at t = a is
    finite.

    Attributes:
        mode: "data" or "order"
        mesh: Mesh of the base solution
        weight_exponent: Weight of diff, bound and margin
        diff: w^μ·|u - u*|
        bound: w^μ·bound
        margin: bound - diff
        A: Weighted A(t) (order mode only)
        base: Solve report of the unperturbed problem
        perturbed: Solve report of the perturbed problem
        a_floor: Part of A that persists as ε -> 0 with matched data, at t = b
        slack: Tolerated negative margin
    """
    mode: str
    mesh: GradedMesh
    weight_exponent: float
    diff: np.ndarray = field(repr=False)
    bound: np.ndarray = field(repr=False)
    margin: np.ndarray = field(repr=False)
    base: SolveReport = field(repr=False)
    perturbed: SolveReport = field(repr=False)
    A: np.ndarray | None = field(default=None, repr=False)
    a_floor: float = 0.0
    slack: float = 5.0e-4

    @property
    def min_margin(self) -> float:
        """Smallest margin over interior nodes t > a."""
        return float(np.min(self.margin[1:]))

    @property
    def max_diff(self) -> float:
        return float(np.max(self.diff))

    @property
    def holds(self) -> bool:
        return self.min_margin >= -self.slack

    @property
    def a_nontight(self) -> bool:
        """A(t) keeps a nonzero floor for α != 1 even without any perturbation."""
        return self.a_floor > self.slack


def _f_sup(report: SolveReport) -> float:
    """max |F_u| over the mesh (t = a skipped when F is singular there)."""
    return float(np.nanmax(np.abs(report.rhs_values.unweighted())))


def _transfer(source: WeightedGridFunction, mesh: GradedMesh) -> WeightedGridFunction:
    """Weighted values of source carried to mesh by linear interpolation in t."""
    if source.mesh.matches(mesh):
        return source
    values = np.interp(mesh.nodes, source.mesh.nodes, source.values)
    return WeightedGridFunction(mesh, source.weight_exponent, values)


def verify_dependence(
    problem: ProblemSpec,
    pert: DataPerturbation,
    cfg: BoundsConfig | None = None,
    solve_cfg: SolveConfig | None = None,
) -> DependenceReport:
    """Solve with u_a and u_a + δ and compare against the data bound.

    Raises:
        SolverError: Propagated from either solve
    """
    cfg = cfg or get_default_config()
    estimate_lipschitz(problem)
    base = solve_cauchy(problem, solve_cfg)
    perturbed = solve_cauchy(pert.perturbed_problem(problem), solve_cfg)
    mesh = base.mesh

    u_star = _transfer(perturbed.solution, mesh)
    diff = np.abs(u_star.values - base.solution.values)
    bound = data_dependence_weighted(problem, pert, mesh, cfg.ml_policy).values
    report = DependenceReport(
        mode="data",
        mesh=mesh,
        weight_exponent=problem.weight_exponent,
        diff=diff,
        bound=bound,
        margin=bound - diff,
        base=base,
        perturbed=perturbed,
        slack=cfg.margin_slack,
    )
    logger.info(
        f"Data dependence (delta={pert.delta:g}): max diff {report.max_diff:.3e}, "
        f"min margin {report.min_margin:.3e}"
    )
    return report


def verify_order_dependence(
    problem: ProblemSpec,
    pert: OrderPerturbation,
    cfg: BoundsConfig | None = None,
    solve_cfg: SolveConfig | None = None,
) -> DependenceReport:
    """Solve with orders α and α - ε and compare against the order bound.

    ‖f‖ is measured on the base solution when pert.f_sup is None. The
    perturbed solution is carried to the base mesh by interpolation.
    """
    cfg = cfg or get_default_config()
    estimate_lipschitz(problem)
    base = solve_cauchy(problem, solve_cfg)
    perturbed = solve_cauchy(pert.perturbed_problem(problem), solve_cfg)
    if pert.f_sup is None:
        pert = pert.with_f_sup(_f_sup(base))
    mesh = base.mesh

    u_star = _transfer(perturbed.solution, mesh)
    mu_star = u_star.weight_exponent
    u = reweight(base.solution, mu_star)
    diff = np.abs(u_star.values - u.values)
    bound = order_dependence_bound(problem, pert, mesh, cfg=cfg).values
    A = order_dependence_A_weighted(problem, pert, mesh).values

    alpha = problem.order.alpha
    w_b = float(mesh.w[-1])
    a_floor = 2.0 * pert.f_sup * abs(1.0 / gamma_fn(alpha + 1.0) - 1.0 / gamma_fn(alpha) ** 2)
    a_floor *= w_b ** (alpha + mu_star)

    report = DependenceReport(
        mode="order",
        mesh=mesh,
        weight_exponent=mu_star,
        diff=diff,
        bound=bound,
        margin=bound - diff,
        base=base,
        perturbed=perturbed,
        A=A,
        a_floor=a_floor,
        slack=cfg.margin_slack,
    )
    logger.info(
        f"Order dependence (epsilon={pert.epsilon:g}): max diff {report.max_diff:.3e}, "
        f"min margin {report.min_margin:.3e}"
    )
    if report.a_nontight:
        logger.warning(
            f"A(t) does not vanish as epsilon -> 0 for alpha={alpha:g}; "
            f"floor {a_floor:.3e} at t=b, the order bound is not tight"
        )
    return report


class BoundsService:
    """Service wrapper for dependence comparisons.

    Example:
        service = BoundsService()
        report = service.data(example5_problem(), DataPerturbation(0.01))
        report.holds   # True
    """

    def __init__(
        self,
        config: BoundsConfig | None = None,
        solve_config: SolveConfig | None = None,
        error_handler: ErrorHandler | None = None,
    ):
        self.config = config or get_default_config()
        self.solve_config = solve_config
        self.error_handler = error_handler or ErrorHandler("bounds")

    def data(self, problem: ProblemSpec, pert: DataPerturbation) -> DependenceReport:
        with self.error_handler.wrap(context={**problem.describe(), "delta": pert.delta}):
            return verify_dependence(problem, pert, self.config, self.solve_config)

    def order(self, problem: ProblemSpec, pert: OrderPerturbation) -> DependenceReport:
        with self.error_handler.wrap(context={**problem.describe(), "epsilon": pert.epsilon}):
            return verify_order_dependence(problem, pert, self.config, self.solve_config)
