"""Pytest fixtures for BOUNDS service tests."""

import pytest

from services.bounds import BoundsConfig
from services.solver import SolveConfig
from shared.models import FractionalOrder, ProblemSpec, RhsSpec, build_graded_mesh, builtin_kernels


@pytest.fixture
def bounds_config() -> BoundsConfig:
    return BoundsConfig()


@pytest.fixture
def solve_config() -> SolveConfig:
    """Coarse mesh for comparison runs."""
    return SolveConfig(mesh_N=128, picard_tol=1.0e-12)


@pytest.fixture
def linear_kernel():
    return builtin_kernels("linear", 0.0, 1.0)


@pytest.fixture
def uniform_mesh(linear_kernel):
    return build_graded_mesh(linear_kernel, 32, 1.0)


@pytest.fixture
def growth_problem(linear_kernel) -> ProblemSpec:
    """Caputo problem with f = 0.5·u, solved by E_{0.5,1}(0.5·t^{0.5})."""
    return ProblemSpec(
        order=FractionalOrder(alpha=0.5, beta=1.0),
        kernel=linear_kernel,
        u_a=1.0,
        rhs=RhsSpec("linear_in_u", (0.5,)),
    )


@pytest.fixture
def source_problem(linear_kernel) -> ProblemSpec:
    """f independent of u, so M = 0."""
    order = FractionalOrder(alpha=0.5, beta=0.5)
    return ProblemSpec(
        order=order,
        kernel=linear_kernel,
        u_a=1.0,
        rhs=RhsSpec("power_source", (1.0, 1.0)),
    )
