"""Pytest fixtures for CALCULUS service tests."""

import pytest

from services.calculus import VerificationConfig, get_quick_config
from shared.models import build_graded_mesh, builtin_kernels


@pytest.fixture
def verify_config() -> VerificationConfig:
    return get_quick_config()


@pytest.fixture
def linear_kernel():
    return builtin_kernels("linear", 0.0, 1.0)


@pytest.fixture
def exp_kernel():
    return builtin_kernels("exp", 0.0, 1.0)


@pytest.fixture
def mesh(linear_kernel):
    """Graded mesh, r = 2."""
    return build_graded_mesh(linear_kernel, 256, 2.0)


@pytest.fixture
def small_mesh(linear_kernel):
    return build_graded_mesh(linear_kernel, 16, 2.0)
