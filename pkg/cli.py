"""ψ-Hilfer Cauchy problem CLI

Subcommands:
    solve <config>                              solve and write t,psi_t,weighted_u,u,F,residual
    verify <suite>                              run identity checks (power_rule, semigroup, ...)
    bounds <config> --mode=order|data --eps/--delta
                                                compare a perturbed solve with its bound
    demo                                        solve the builtin ψ = √(t+1) problem

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from config import settings
from services.bounds import BoundsConfig
from services.calculus import VerificationConfig
from services.cli import CLIOrchestrator, get_default_config, get_verbose_config, suite_names
from services.solver import SolveConfig
from shared.errors import create_error_handler
from shared.special import MlSeriesPolicy
from shared.logging import LoggerFactory


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilfer",
        description="Solve implicit ψ-Hilfer fractional Cauchy problems and check their bounds.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="print full tables and histories")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve the problem of a run config")
    solve.add_argument("config", type=Path, help="flat key = value run config")
    solve.add_argument("--out", type=Path, default=None, help="CSV path (overrides `out`)")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", help=f"one of {', '.join(suite_names())}")

    bounds = sub.add_parser("bounds", help="compare a perturbed solve with its dependence bound")
    bounds.add_argument("config", type=Path, help="flat key = value run config")
    bounds.add_argument("--mode", choices=("order", "data"), required=True)
    bounds.add_argument("--eps", type=float, default=None, help="order perturbation α -> α - ε")
    bounds.add_argument("--delta", type=float, default=None, help="initial value perturbation u_a -> u_a + δ")
    bounds.add_argument("--u-a-star", type=float, default=None, help="initial value of the order-perturbed problem")
    bounds.add_argument("--out", type=Path, default=None, help="CSV path (overrides `out`)")

    sub.add_parser("demo", help="solve the builtin ψ = √(t+1) problem end to end")
    return parser


def build_orchestrator(verbose: bool = False) -> CLIOrchestrator:
    """Orchestrator with service configs taken from settings.yaml."""
    bounds = settings.get("bounds", {})
    ml_policy = MlSeriesPolicy.from_settings(settings.get("special", {}))
    return CLIOrchestrator(
        config=get_verbose_config() if verbose else get_default_config(),
        solve_config=SolveConfig.from_settings(settings.get("solver", {}), ml_policy=ml_policy),
        verify_config=VerificationConfig.from_settings(settings.get("verify", {}), ml_policy),
        bounds_config=BoundsConfig.from_settings(bounds, ml_policy) if bounds else None,
        error_handler=create_error_handler("cli"),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    LoggerFactory.configure_from_settings(settings.get("logging", {}))
    if args.verbose:
        LoggerFactory.set_console_level("INFO")
    orchestrator = build_orchestrator(args.verbose)

    if args.command == "solve":
        return orchestrator.cmd_solve(args.config, args.out)
    if args.command == "verify":
        return orchestrator.cmd_verify(args.suite)
    if args.command == "bounds":
        return orchestrator.cmd_bounds(
            args.config, args.mode, eps=args.eps, delta=args.delta,
            u_a_star=args.u_a_star, out=args.out,
        )
    return orchestrator.cmd_demo()


if __name__ == "__main__":
    sys.exit(main())
