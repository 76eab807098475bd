"""CLI orchestrator service for the solve, verify, bounds and demo commands.

This module provides the CLIOrchestrator class, run-config parsing and the
verification suites.

Example usage:
    from services.cli import CLIOrchestrator, get_default_config

    orchestrator = CLIOrchestrator(config=get_default_config())

    exit_code = orchestrator.cmd_solve(Path("config/problems/example5.conf"))
    exit_code = orchestrator.cmd_verify("ml")
"""

from services.cli.config import (
    CLIServiceConfig,
    DisplayConfig,
    RunConfig,
    get_default_config,
    get_verbose_config,
)
from services.cli.orchestrator import (
    EXIT_CONFIG,
    EXIT_NUMERIC,
    EXIT_OK,
    CLIOrchestrator,
    bounds_columns,
    solution_columns,
)
from services.cli.suites import SUITES, SuiteCheck, SuiteResult, run_suites, suite_names

__all__ = [
    # Service
    "CLIOrchestrator",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_NUMERIC",
    "solution_columns",
    "bounds_columns",
    # Configuration
    "CLIServiceConfig",
    "DisplayConfig",
    "RunConfig",
    "get_default_config",
    "get_verbose_config",
    # Suites
    "SUITES",
    "SuiteCheck",
    "SuiteResult",
    "run_suites",
    "suite_names",
]
