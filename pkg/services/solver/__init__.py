"""SOLVER Service - Picard iteration for implicit ψ-Hilfer Cauchy problems.

Provides:
- Contraction partition of [a, b]
- Inner fixed point for the implicit right-hand side
- Picard sweeps with frozen history across subintervals
- Volterra residual and sampled Lipschitz check

Example:
    from services.solver import SolverService
    from shared.models import example5_problem

    report = SolverService().solve(example5_problem())
    report.partition.K                # 1
    report.final_residual             # < 1e-8
"""

from services.solver.config import SolveConfig, get_default_config
from services.solver.partition import (
    Partition,
    contraction_constant,
    max_psi_step,
    partition_domain,
)
from services.solver.picard import (
    inner_fixed_point,
    picard_sweep,
    seed_iterate,
    seed_weight,
    weighted_inner_fixed_point,
)
from services.solver.service import (
    BoundCertificate,
    SolveReport,
    SolverService,
    build_solution_mesh,
    estimate_lipschitz,
    solve_cauchy,
    volterra_residual,
)

__all__ = [
    # Config
    "SolveConfig",
    "get_default_config",
    # Partition
    "Partition",
    "contraction_constant",
    "max_psi_step",
    "partition_domain",
    # Picard
    "inner_fixed_point",
    "picard_sweep",
    "seed_iterate",
    "seed_weight",
    "weighted_inner_fixed_point",
    # Service
    "BoundCertificate",
    "SolveReport",
    "SolverService",
    "build_solution_mesh",
    "estimate_lipschitz",
    "solve_cauchy",
    "volterra_residual",
]
