"""CLI service test fixtures."""

import pytest

from services.calculus import get_quick_config
from services.cli import CLIOrchestrator, CLIServiceConfig, DisplayConfig
from services.solver import SolveConfig
from shared.errors import ErrorHandler


@pytest.fixture
def display_config() -> DisplayConfig:
    """Plain output for tests."""
    return DisplayConfig(use_panels=False, verbose=False)


@pytest.fixture
def test_cli_config(display_config, tmp_path) -> CLIServiceConfig:
    """CSV output goes to a temporary results directory."""
    return CLIServiceConfig(display=display_config, results_dir=tmp_path / "results")


@pytest.fixture
def orchestrator(test_cli_config, tmp_path) -> CLIOrchestrator:
    return CLIOrchestrator(
        config=test_cli_config,
        solve_config=SolveConfig(mesh_N=128, picard_tol=1.0e-11),
        verify_config=get_quick_config(),
        error_handler=ErrorHandler("cli", tmp_path / "errors.json"),
    )


@pytest.fixture
def write_config(tmp_path):
    """Write a run config to tmp_path and return its path."""
    def _write(text: str, name: str = "run.conf"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write


@pytest.fixture
def zero_source_text() -> str:
    """f ≡ 0: the solution is the seed u_a/Γ(γ)·w^{γ-1}."""
    return "\n".join([
        "kernel = linear",
        "a = 0",
        "b = 1",
        "alpha = 0.5",
        "beta = 0.5",
        "u_a = 1.5",
        "rhs = linear_in_u",
        "rhs_params = 0",
        "mesh_N = 32",
    ])
