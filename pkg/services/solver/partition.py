"""Contraction-driven partition of [a, b].

On a subinterval [t_k, t_{k+1}] the Picard operator contracts with constant

    η_k = Γ(γ)·(ψ(t_{k+1}) - ψ(t_k))^α / Γ(γ + α) · M/(1 - M*)

so the largest admissible ψ-step is D = (s·Γ(γ+α)/(Γ(γ)·L))^{1/α} with
s the safety factor and L = M/(1 - M*). Breakpoints are placed greedily
from the left and ψ is inverted with a bracketing root finder.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from shared.errors import DegenerateStep
from shared.logging import get_logger
from shared.models import ProblemSpec
from shared.special import log_gamma

from services.solver.config import SolveConfig

logger = get_logger("solver")

# Relative shortening of each step; keeps η_k strictly below the safety factor
STEP_SHRINK = 1.0e-12


@dataclass(frozen=True)
class Partition:
    """Breakpoints a = t_0 < ... < t_K = b with their contraction constants.

    Attributes:
        breakpoints: t_0, ..., t_K
        contraction_constants: η_k for each subinterval [t_k, t_{k+1}]
    """
    breakpoints: tuple[float, ...]
    contraction_constants: tuple[float, ...]

    @property
    def K(self) -> int:
        """Number of subintervals."""
        return len(self.contraction_constants)

    @property
    def max_contraction(self) -> float:
        return max(self.contraction_constants)

    def intervals(self) -> list[tuple[float, float]]:
        return list(zip(self.breakpoints[:-1], self.breakpoints[1:]))


def contraction_constant(problem: ProblemSpec, psi_step: float) -> float:
    """η for a subinterval whose ψ-length is psi_step."""
    L = problem.lipschitz_ratio
    if L == 0.0 or psi_step == 0.0:
        return 0.0
    alpha, gamma = problem.order.alpha, problem.gamma
    log_eta = log_gamma(gamma) + alpha * np.log(psi_step) - log_gamma(gamma + alpha)
    return float(np.exp(log_eta) * L)


def max_psi_step(problem: ProblemSpec, safety_factor: float) -> float:
    """Largest ψ-step D with η(D) = safety_factor (inf when L = 0)."""
    L = problem.lipschitz_ratio
    if L == 0.0:
        return float("inf")
    alpha, gamma = problem.order.alpha, problem.gamma
    log_d = (np.log(safety_factor) + log_gamma(gamma + alpha) - log_gamma(gamma) - np.log(L)) / alpha
    return float(np.exp(log_d))


def partition_domain(problem: ProblemSpec, cfg: SolveConfig) -> Partition:
    """Greedy left-to-right contraction partition.

    Raises:
        DegenerateStep: If the admissible ψ-step underflows or more than
            cfg.max_intervals subintervals would be needed
    """
    kernel = problem.kernel

    def psi(t: float) -> float:
        return float(np.asarray(kernel.eval(np.asarray(t, dtype=float))))

    psi_b = psi(kernel.b)
    step = max_psi_step(problem, cfg.safety_factor) * (1.0 - STEP_SHRINK)

    t_k, x_k = kernel.a, psi(kernel.a)
    if step <= 0.0 or x_k + step == x_k:
        raise DegenerateStep(
            "Admissible ψ-step underflows; M/(1 - M*) is too large",
            context={"step": step, "L": problem.lipschitz_ratio},
        )

    breakpoints = [t_k]
    etas = []
    while t_k < kernel.b:
        if len(etas) >= cfg.max_intervals:
            raise DegenerateStep(
                f"Partition needs more than {cfg.max_intervals} subintervals",
                context={"max_intervals": cfg.max_intervals, "step": step},
            )
        target = x_k + step
        if target >= psi_b:
            t_next, x_next = kernel.b, psi_b
        else:
            t_next = brentq(lambda t: psi(t) - target, t_k, kernel.b, xtol=1.0e-15)
            x_next = psi(t_next)
            if not t_next > t_k:
                raise DegenerateStep("Breakpoint did not advance", {"t": t_k})
        etas.append(contraction_constant(problem, x_next - x_k))
        breakpoints.append(t_next)
        t_k, x_k = t_next, x_next

    partition = Partition(tuple(breakpoints), tuple(etas))
    logger.info(
        f"Partition: {partition.K} interval(s), max eta {partition.max_contraction:.4g} "
        f"(safety {cfg.safety_factor})"
    )
    return partition
