"""Global pytest configuration and fixtures.

This file provides shared fixtures available to all tests.
Service-specific fixtures should be in services/*/tests/conftest.py
"""

from pathlib import Path

import pytest

from shared.logging import LoggerFactory
from shared.models import (
    FractionalOrder,
    GradedMesh,
    ProblemSpec,
    PsiKernel,
    RhsSpec,
    build_graded_mesh,
    builtin_kernels,
    example5_problem,
)


# ============================================================================
# Kernel and Order Fixtures
# ============================================================================

@pytest.fixture
def kernel_linear() -> PsiKernel:
    """ψ(t) = t on [0, 1]."""
    return builtin_kernels("linear", 0.0, 1.0)


@pytest.fixture
def kernel_sqrt() -> PsiKernel:
    """ψ(t) = √(t+1) on [0, 1]."""
    return builtin_kernels("sqrt_shift", 0.0, 1.0)


@pytest.fixture
def kernel_exp() -> PsiKernel:
    """ψ(t) = e^t on [0, 1]."""
    return builtin_kernels("exp", 0.0, 1.0)


@pytest.fixture
def hilfer_order() -> FractionalOrder:
    """α = β = 1/2, γ = 3/4."""
    return FractionalOrder(alpha=0.5, beta=0.5)


# ============================================================================
# Mesh Fixtures
# ============================================================================

@pytest.fixture
def graded_mesh(kernel_linear) -> GradedMesh:
    return build_graded_mesh(kernel_linear, 256, 2.0)


@pytest.fixture
def uniform_linear_mesh(kernel_linear) -> GradedMesh:
    return build_graded_mesh(kernel_linear, 64, 1.0)


# ============================================================================
# Problem Fixtures
# ============================================================================

@pytest.fixture
def example5() -> ProblemSpec:
    return example5_problem()


@pytest.fixture
def linear_problem(kernel_linear) -> ProblemSpec:
    """Caputo f = 0.5·u, solved by E_{1/2}(0.5·t^{1/2})."""
    return ProblemSpec(
        order=FractionalOrder(alpha=0.5, beta=1.0),
        kernel=kernel_linear,
        u_a=1.0,
        rhs=RhsSpec("linear_in_u", (0.5,)),
    )


@pytest.fixture
def problems_dir() -> Path:
    """Builtin run configs shipped in config/problems."""
    return Path(__file__).parent / "config" / "problems"


# ============================================================================
# Cleanup Fixtures
# ============================================================================

@pytest.fixture(autouse=True)
def reset_loggers():
    """Reset loggers between tests."""
    yield
    LoggerFactory.reset()


@pytest.fixture
def clean_error_file(tmp_path):
    """Ensure errors.json is cleaned up after test."""
    error_file = tmp_path / "errors.json"
    yield error_file
    if error_file.exists():
        error_file.unlink()
