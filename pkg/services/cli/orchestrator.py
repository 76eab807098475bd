"""CLI Orchestrator service for the solve, verify, bounds and demo commands.

Each command returns an exit code:
    0  success (converged, all checks passed, bound holds)
    1  configuration error (unreadable or invalid config, unknown suite)
    2  numerical failure (non-convergence, bound violated, other solver errors)
"""

from pathlib import Path
from typing import Optional

import numpy as np

from services.bounds import (
    BoundsConfig,
    BoundsService,
    DataPerturbation,
    DependenceReport,
    OrderPerturbation,
)
from services.calculus import VerificationConfig
from services.cli.config import CLIServiceConfig, RunConfig, get_default_config
from services.cli.suites import SuiteResult, run_suites
from services.solver import SolveConfig, SolveReport, SolverService
from shared.errors import (
    ConfigError,
    ConfigValidationError,
    ErrorHandler,
    HilferError,
    NonConvergence,
)
from shared.logging import get_logger
from shared.models import example5_problem
from shared.utils import console_utils as ui
from shared.utils.csv_storage import save_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2

SOLVE_COLUMNS = ("t", "psi_t", "weighted_u", "u", "F", "residual")
BOUNDS_COLUMNS = ("t", "diff", "bound", "margin")


def solution_columns(report: SolveReport) -> dict[str, np.ndarray]:
    """CSV columns of a solve: unweighted u and F are blank at t_0 when γ < 1."""
    mesh = report.mesh
    return {
        "t": mesh.nodes,
        "psi_t": mesh.kernel.eval(mesh.nodes),
        "weighted_u": report.solution.values,
        "u": report.solution.unweighted(),
        "F": report.rhs_values.unweighted(),
        "residual": report.nodal_residual,
    }


def bounds_columns(report: DependenceReport) -> dict[str, np.ndarray]:
    columns = {
        "t": report.mesh.nodes,
        "diff": report.diff,
        "bound": report.bound,
        "margin": report.margin,
    }
    if report.A is not None:
        columns["A"] = report.A
    return columns


class CLIOrchestrator:
    """Runs CLI commands against the solver, calculus and bounds services.

    Attributes:
        config: CLI service configuration
        solve_config: Base solver settings (run configs override mesh_N etc.)
        verify_config: Suite meshes and tolerances
        bounds_config: Gronwall series settings
        error_handler: Records failures in errors.json
        logger: Service logger
    """

    def __init__(
        self,
        config: Optional[CLIServiceConfig] = None,
        solve_config: Optional[SolveConfig] = None,
        verify_config: Optional[VerificationConfig] = None,
        bounds_config: Optional[BoundsConfig] = None,
        error_handler: Optional[ErrorHandler] = None,
    ):
        self.config = config or get_default_config()
        self.solve_config = solve_config or SolveConfig()
        self.verify_config = verify_config or VerificationConfig()
        self.bounds_config = bounds_config or BoundsConfig(margin_slack=self.config.margin_slack)
        self.error_handler = error_handler or ErrorHandler("cli")
        self.logger = get_logger("cli")

    def _header(self, title: str) -> None:
        if self.config.display.use_panels:
            ui.print_header(title)
        else:
            ui.print_section(title)

    def _fail(self, error: HilferError) -> int:
        """Print the error and map it to an exit code."""
        code = EXIT_CONFIG if isinstance(error, ConfigError) else EXIT_NUMERIC
        ui.print_error(f"{type(error).__name__}: {error.message}")
        for key in ("line", "field"):
            if error.context.get(key) is not None:
                ui.print_dim(f"{key}: {error.context[key]}")
        return code

    def _load(self, config_path: Path) -> tuple[RunConfig, SolveConfig]:
        run = RunConfig.from_file(config_path)
        return run, run.to_solve_config(self.solve_config)

    # Solve

    def _print_solve_summary(self, report: SolveReport) -> None:
        partition = report.partition
        ui.print_key_values(
            {
                "problem": f"{report.problem.rhs.kind}, order {report.problem.order}",
                "kernel": f"{report.problem.kernel.label} on [{report.problem.kernel.a}, {report.problem.kernel.b}]",
                "subintervals": partition.K,
                "breakpoints": ", ".join(f"{b:.6g}" for b in partition.breakpoints),
                "nodes": len(report.mesh.nodes),
            },
            title="Partition",
        )
        ui.print_table(
            "Contraction constants",
            ("interval", "η", "sweeps"),
            [
                (i, eta, sweeps)
                for i, (eta, sweeps) in enumerate(
                    zip(partition.contraction_constants, report.picard_iters_per_interval)
                )
            ],
        )
        if report.certificate is not None and report.certificate.sensitivity is not None:
            ui.print_info(f"Sensitivity to u_a at t = b: {report.certificate.sensitivity:.6g}")
        ui.print_info(f"Final weighted residual: {report.final_residual:.3e}")

    def cmd_solve(self, config_path: Path, out: Optional[Path] = None) -> int:
        """Solve the problem of a run config and write its CSV.

        Returns:
            0 on convergence, 1 on config errors, 2 on solver errors
        """
        self._header(f"Solve {config_path}")
        try:
            with self.error_handler.wrap(context={"command": "solve", "config": str(config_path)}):
                run, solve_config = self._load(config_path)
                report = SolverService(solve_config, self.error_handler).solve(run.to_problem())
        except NonConvergence as e:
            code = self._fail(e)
            if e.report is not None:
                ui.print_dim(f"Sweeps per subinterval: {list(e.report.picard_iters_per_interval)}")
            return code
        except HilferError as e:
            return self._fail(e)

        self._print_solve_summary(report)
        path = Path(out) if out else run.output_path(self.config.results_dir, "solve")
        save_csv(path, solution_columns(report), self.config.float_format)
        ui.print_file_saved(str(path), "Solution")
        return EXIT_OK

    # Verify

    def _print_suite(self, result: SuiteResult) -> None:
        if self.config.display.verbose or not result.passed:
            rows = result.checks if self.config.display.verbose else result.failures
            ui.print_table(
                f"Suite {result.name}",
                ("case", "deviation", "tolerance", "status"),
                [(c.label, c.deviation, c.tolerance, c.passed) for c in rows],
                status_column=3,
            )
        message = f"{result.name}: {len(result.checks)} checks, max deviation {result.max_deviation:.3e}"
        if result.passed:
            ui.print_success(message)
        else:
            ui.print_error(f"{message}, {len(result.failures)} failed")

    def cmd_verify(self, suite: str) -> int:
        """Run a verification suite (or all of them).

        Returns:
            0 if every check passes, 1 on an unknown suite, 2 on failures
        """
        self._header(f"Verify {suite}")
        try:
            with self.error_handler.wrap(context={"command": "verify", "suite": suite}):
                results = run_suites(suite, self.verify_config)
        except HilferError as e:
            return self._fail(e)

        for result in results:
            self._print_suite(result)
        return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC

    # Bounds

    def cmd_bounds(
        self,
        config_path: Path,
        mode: str,
        eps: Optional[float] = None,
        delta: Optional[float] = None,
        u_a_star: Optional[float] = None,
        out: Optional[Path] = None,
    ) -> int:
        """Compare a perturbed solve with its dependence bound and write the CSV.

        Args:
            config_path: Run config of the base problem
            mode: "order" (needs eps) or "data" (needs delta)
            eps: Order perturbation α -> α - ε
            delta: Initial-value perturbation u_a -> u_a + δ
            u_a_star: Initial value of the order-perturbed problem (default u_a)
            out: CSV path override

        Returns:
            0 if the bound holds at every interior node, 1 on config errors,
            2 on solver errors or a violated bound
        """
        self._header(f"Bounds ({mode}) {config_path}")
        try:
            with self.error_handler.wrap(
                context={"command": "bounds", "config": str(config_path), "mode": mode}
            ):
                _check_mode(mode, eps, delta)
                run, solve_config = self._load(config_path)
                problem = run.to_problem()
                service = BoundsService(self.bounds_config, solve_config, self.error_handler)
                if mode == "data":
                    report = service.data(problem, DataPerturbation(delta))
                else:
                    star = problem.u_a if u_a_star is None else u_a_star
                    report = service.order(problem, OrderPerturbation(eps, star))
        except HilferError as e:
            return self._fail(e)

        ui.print_key_values(
            {
                "mode": report.mode,
                "weight exponent": report.weight_exponent,
                "max weighted |u - u*|": report.max_diff,
                "min margin (t > a)": report.min_margin,
                "slack": report.slack,
            },
            title="Dependence bound",
        )
        if report.mode == "order" and report.a_nontight:
            ui.print_warning(f"A(t) keeps a floor of {report.a_floor:.3e} as ε -> 0; the bound is not tight")

        path = Path(out) if out else run.output_path(self.config.results_dir, f"bounds_{mode}")
        save_csv(path, bounds_columns(report), self.config.float_format)
        ui.print_file_saved(str(path), "Bounds")

        if report.holds:
            ui.print_success("Bound holds at every interior node")
            return EXIT_OK
        ui.print_error(f"Bound violated: min margin {report.min_margin:.3e}")
        return EXIT_NUMERIC

    # Demo

    def cmd_demo(self) -> int:
        """Solve the builtin ψ = √(t+1) problem end to end and print the checks."""
        problem = example5_problem()
        self._header("Demo: ψ(t) = √(t+1), α = 1/2, β = 1/3")
        try:
            with self.error_handler.wrap(context={"command": "demo"}):
                service = SolverService(self.solve_config, self.error_handler)
                partition = service.partition(problem)
                report = service.solve(problem)
        except HilferError as e:
            return self._fail(e)

        ui.print_key_values(
            {"γ": problem.gamma, "M": problem.lipschitz_M, "M*": problem.lipschitz_Mstar},
            title="Problem",
        )
        eta = partition.max_contraction
        ui.print_section("Contraction condition")
        for i, value in enumerate(partition.contraction_constants):
            ui.print_info(f"η_{i} = {value:.4f}")
        if eta < 1.0:
            ui.print_success(f"condition (t1) holds: η = {eta:.4f} < 1 for all t in [{problem.kernel.a:g}, {problem.kernel.b:g}]")
        else:
            ui.print_error(f"condition (t1) fails: η = {eta:.4f} >= 1")

        ui.print_section("Picard history")
        limit = None if self.config.display.verbose else self.config.display.history_rows
        for i, history in enumerate(report.residual_history):
            shown = history if limit is None else history[:limit]
            for k, diff in enumerate(shown, start=1):
                ui.print_dim(f"interval {i} sweep {k}: ‖u_k - u_(k-1)‖ = {diff:.3e}")
            if limit is not None and len(history) > limit:
                ui.print_dim(f"interval {i}: {len(history) - limit} more sweep(s)")
        ratios = report.observed_ratios(floor=1e-13)
        if ratios:
            ui.print_info(f"Largest observed contraction ratio: {max(ratios):.4f}")
        ui.print_info(f"Final weighted residual: {report.final_residual:.3e}")
        self.logger.info(f"Demo finished: η = {eta:.4f}, residual {report.final_residual:.3e}")
        return EXIT_OK


def _check_mode(mode: str, eps: Optional[float], delta: Optional[float]) -> None:
    if mode == "data":
        if delta is None:
            raise ConfigValidationError("data mode needs --delta", {"field": "delta"})
    elif mode == "order":
        if eps is None:
            raise ConfigValidationError("order mode needs --eps", {"field": "eps"})
    else:
        raise ConfigValidationError(f"Unknown bounds mode '{mode}'", {"field": "mode"})
