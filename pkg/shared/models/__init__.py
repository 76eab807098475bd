"""Core types shared by every service.

This module provides:
- PsiKernel and the builtin kernel catalog
- FractionalOrder (α, β, derived γ)
- GradedMesh and its constructors
- WeightedGridFunction with the weighted sup-norm and reweighting
- ProblemSpec and the RhsSpec catalog
"""

from shared.models.kernel import BUILTIN_KERNELS, PsiKernel, builtin_kernels
from shared.models.order import FractionalOrder
from shared.models.mesh import (
    GradedMesh,
    build_graded_mesh,
    default_grading,
    graded_nodes,
)
from shared.models.grid_function import (
    WeightedGridFunction,
    reweight,
    weighted_sup_norm,
)
from shared.models.problem import (
    RHS_KINDS,
    ProblemSpec,
    RhsSpec,
    example5_problem,
)

__all__ = [
    # Kernels
    "PsiKernel",
    "BUILTIN_KERNELS",
    "builtin_kernels",
    # Orders
    "FractionalOrder",
    # Meshes
    "GradedMesh",
    "build_graded_mesh",
    "default_grading",
    "graded_nodes",
    # Grid functions
    "WeightedGridFunction",
    "reweight",
    "weighted_sup_norm",
    # Problems
    "RHS_KINDS",
    "RhsSpec",
    "ProblemSpec",
    "example5_problem",
]
