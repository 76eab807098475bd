"""Tests for solve_cauchy and the SolverService wrapper."""

import json
import logging

import numpy as np
import pytest

from services.solver import (
    SolveConfig,
    SolverService,
    build_solution_mesh,
    partition_domain,
    estimate_lipschitz,
    solve_cauchy,
    volterra_residual,
)
from shared.errors import ErrorHandler, NonConvergence
from services.calculus import HilferOperator
from shared.models import (
    FractionalOrder,
    ProblemSpec,
    RhsSpec,
    example5_problem,
    reweight,
    weighted_sup_norm,
)
from shared.special import MlSeriesPolicy, gamma_fn, mittag_leffler


class TestSolveCauchy:
    """Tests for solve_cauchy()."""

    def test_power_source_matches_power_rule(self, power_problem, fast_config):
        report = solve_cauchy(power_problem, fast_config)

        w = report.mesh.w
        expected = 1.0 / gamma_fn(0.75) + 2.0 * gamma_fn(0.75) / gamma_fn(1.25) * w ** 0.5
        assert report.partition.K == 1
        assert report.picard_iters_per_interval == (2,)
        assert np.allclose(report.solution.values, expected, atol=1e-11)
        assert report.final_residual < 1e-11

    @pytest.mark.parametrize("delta", [0.5, 0.25])
    def test_power_source_below_gamma(self, linear_kernel, fast_config, delta):
        # γ = 3/4, α = 1/2; δ = 1/4 is the edge γ - α where u stays bounded in weight
        problem = ProblemSpec(
            order=FractionalOrder(alpha=0.5, beta=0.5),
            kernel=linear_kernel,
            u_a=1.0,
            rhs=RhsSpec("power_source", (1.0, delta)),
        )
        report = solve_cauchy(problem, fast_config)

        w = report.mesh.w
        coef = gamma_fn(delta) / gamma_fn(delta + 0.5)
        expected = 1.0 / gamma_fn(0.75) + coef * w ** (delta - 0.25)
        assert report.rhs_values.weight_exponent == pytest.approx(1.0 - delta)
        assert np.allclose(report.rhs_values.values, 1.0)
        assert np.allclose(report.solution.values, expected, atol=1e-10)
        assert report.final_residual < 1e-10

    def test_caputo_implicit_problem(self, implicit_problem, fast_config):
        report = solve_cauchy(implicit_problem, fast_config)

        expected = 2.0 * report.mesh.w ** 0.5 / gamma_fn(1.5)
        assert report.solution.weight_exponent == 0.0
        assert np.allclose(report.rhs_values.values, 2.0, atol=1e-10)
        assert np.allclose(report.solution.values, expected, atol=1e-10)

    def test_decay_matches_mittag_leffler(self, decay_problem, fast_config):
        report = solve_cauchy(decay_problem, fast_config)

        w = report.mesh.w
        exact = mittag_leffler(0.5, 0.75, -(w ** 0.5))
        assert report.partition.K == 3
        assert len(report.picard_iters_per_interval) == 3
        assert len(report.mesh.nodes) == 3 * fast_config.mesh_N + 1
        assert np.max(np.abs(report.solution.values - exact)) < 1e-3

    def test_example5_converges(self):
        report = solve_cauchy(example5_problem(), SolveConfig(mesh_N=256))

        assert report.converged
        assert report.partition.K == 1
        assert report.final_residual < 1e-8
        assert report.nodal_residual.shape == report.solution.values.shape
        assert all(ratio < 0.2 for ratio in report.observed_ratios(floor=1e-12))

    def test_example5_certificate(self):
        report = solve_cauchy(example5_problem(), SolveConfig(mesh_N=64))

        cert = report.certificate
        assert cert.contraction_constants == report.partition.contraction_constants
        assert cert.sensitivity is not None
        assert cert.sensitivity > 1.0 / gamma_fn(2.0 / 3.0)

    def test_certificate_follows_series_policy(self):
        # E_{α,γ}(L·w^α) needs |z| <= arg_cap; a tiny cap leaves no sensitivity
        cfg = SolveConfig(mesh_N=64, ml_policy=MlSeriesPolicy(arg_cap=1e-3))
        report = solve_cauchy(example5_problem(), cfg)

        assert report.converged
        assert report.certificate.sensitivity is None

    def test_sweep_budget_exhausted(self):
        cfg = SolveConfig(mesh_N=64, picard_max_iters=1)
        with pytest.raises(NonConvergence) as excinfo:
            solve_cauchy(example5_problem(), cfg)

        assert excinfo.value.report is not None
        assert not excinfo.value.report.converged
        assert excinfo.value.residual > 0.0


class TestSolutionMesh:
    """Tests for build_solution_mesh()."""

    def test_joins_subintervals_at_breakpoints(self, decay_problem, fast_config):
        partition = partition_domain(decay_problem, fast_config)
        mesh = build_solution_mesh(decay_problem, partition, fast_config)

        assert partition.K == 3
        assert mesh.N == 3 * fast_config.mesh_N
        assert np.all(np.diff(mesh.nodes) > 0.0)
        for k, (_, hi) in enumerate(partition.intervals()):
            assert mesh.nodes[(k + 1) * fast_config.mesh_N] == hi
        # Later subintervals are uniform
        tail = np.diff(mesh.nodes[2 * fast_config.mesh_N :])
        assert np.allclose(tail, tail[0])


class TestResidualAndLipschitz:
    """Tests for volterra_residual() and estimate_lipschitz()."""

    def test_residual_of_solution_is_small(self, power_problem, fast_config):
        report = solve_cauchy(power_problem, fast_config)
        assert volterra_residual(power_problem, report.solution, report.rhs_values) < 1e-11

    def test_residual_of_seed_is_large(self, power_problem, fast_config):
        report = solve_cauchy(power_problem, fast_config)
        seed = report.solution.with_values(np.full(len(report.mesh.nodes), 1.0 / gamma_fn(0.75)))
        assert volterra_residual(power_problem, seed, report.rhs_values.values) > 1.0

    def test_example5_estimate_within_declared(self):
        M_est, Mstar_est = estimate_lipschitz(example5_problem())

        assert 0.0 < M_est <= 0.1
        assert 0.0 < Mstar_est <= 0.1

    def test_warns_on_understated_constant(self, linear_kernel, decay_problem, caplog):
        problem = ProblemSpec(
            order=decay_problem.order,
            kernel=linear_kernel,
            u_a=1.0,
            rhs=RhsSpec("custom_callback", callback=lambda t, u, v: 2.0 * u),
            lipschitz_M=1.0,
            lipschitz_Mstar=0.0,
        )
        with caplog.at_level(logging.WARNING, logger="hilfer.solver"):
            M_est, _ = estimate_lipschitz(problem)

        assert M_est == pytest.approx(2.0)
        assert "look too small" in caplog.text


class TestSolverService:
    """Tests for SolverService."""

    def test_solve(self, power_problem, fast_config, tmp_path):
        service = SolverService(fast_config, ErrorHandler("solver", tmp_path / "errors.json"))
        report = service.solve(power_problem)

        assert report.converged
        assert service.partition(power_problem).K == 1

    def test_solve_warns_on_understated_constant(self, linear_kernel, fast_config, tmp_path, caplog):
        problem = ProblemSpec(
            order=FractionalOrder(alpha=0.5, beta=0.5),
            kernel=linear_kernel,
            u_a=1.0,
            rhs=RhsSpec("custom_callback", callback=lambda t, u, v: 0.5 * u),
            lipschitz_M=0.01,
            lipschitz_Mstar=0.0,
        )
        service = SolverService(fast_config, ErrorHandler("solver", tmp_path / "errors.json"))
        with caplog.at_level(logging.WARNING, logger="hilfer.solver"):
            report = service.solve(problem)

        assert report.converged
        assert "look too small" in caplog.text

    def test_failure_writes_error_file(self, tmp_path):
        error_file = tmp_path / "errors.json"
        service = SolverService(
            SolveConfig(mesh_N=32, picard_max_iters=1),
            ErrorHandler("solver", error_file),
        )
        with pytest.raises(NonConvergence):
            service.solve(example5_problem())

        data = json.loads(error_file.read_text())
        assert data["error_type"] == "NonConvergence"
        assert data["context"]["rhs"] == "example5"


def _derivative_gap(report) -> float:
    """max |D^{α,β}u - F| on interior nodes, at the larger weight exponent."""
    problem = report.problem
    derivative = HilferOperator(problem.kernel, problem.order, report.mesh)(report.solution)
    F = report.rhs_values
    mu = max(derivative.weight_exponent, F.weight_exponent)
    return weighted_sup_norm(reweight(derivative, mu) - reweight(F, mu), 2, 1)


class TestDerivativeEquivalence:
    """A solution of the integral equation satisfies D^{α,β}u = F."""

    def test_example5(self):
        report = solve_cauchy(example5_problem(), SolveConfig(mesh_N=512))
        assert _derivative_gap(report) < 1e-3

    def test_decay(self, decay_problem):
        report = solve_cauchy(decay_problem, SolveConfig(mesh_N=512))
        assert _derivative_gap(report) < 1e-2

    def test_large_outer_order(self, linear_kernel):
        # β(1-α) = 0.63
        problem = ProblemSpec(
            order=FractionalOrder(alpha=0.3, beta=0.9),
            kernel=linear_kernel,
            u_a=1.0,
            rhs=RhsSpec("linear_in_u", (0.5,)),
        )
        report = solve_cauchy(problem, SolveConfig(mesh_N=512))
        assert _derivative_gap(report) < 1e-2

    def test_caputo(self, implicit_problem):
        report = solve_cauchy(implicit_problem, SolveConfig(mesh_N=256))
        assert _derivative_gap(report) < 1e-2
