"""Pytest fixtures for SOLVER service tests."""

import pytest

from services.solver import SolveConfig
from shared.models import FractionalOrder, ProblemSpec, RhsSpec, builtin_kernels


@pytest.fixture
def fast_config() -> SolveConfig:
    """Coarse mesh, fast to solve."""
    return SolveConfig(mesh_N=128, picard_tol=1.0e-11)


@pytest.fixture
def linear_kernel():
    return builtin_kernels("linear", 0.0, 1.0)


@pytest.fixture
def power_problem(linear_kernel) -> ProblemSpec:
    """f = 2·w^{γ-1}; its weighted values are the constant 2."""
    order = FractionalOrder(alpha=0.5, beta=0.5)
    return ProblemSpec(
        order=order,
        kernel=linear_kernel,
        u_a=1.0,
        rhs=RhsSpec("power_source", (2.0, order.gamma)),
    )


@pytest.fixture
def decay_problem(linear_kernel) -> ProblemSpec:
    """f = -u, L = 1, needs several contraction intervals."""
    return ProblemSpec(
        order=FractionalOrder(alpha=0.5, beta=0.5),
        kernel=linear_kernel,
        u_a=1.0,
        rhs=RhsSpec("linear_in_u", (-1.0,)),
    )


@pytest.fixture
def implicit_problem(linear_kernel) -> ProblemSpec:
    """f = 1 + 0.5·v, so D u = 2 identically."""
    return ProblemSpec(
        order=FractionalOrder(alpha=0.5, beta=1.0),
        kernel=linear_kernel,
        u_a=0.0,
        rhs=RhsSpec("implicit_contraction", (1.0, 0.5)),
    )
