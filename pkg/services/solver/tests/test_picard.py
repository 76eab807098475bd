"""Unit tests for Picard sweeps and the implicit inner fixed point."""

import numpy as np
import pytest

from services.solver import (
    SolveConfig,
    inner_fixed_point,
    picard_sweep,
    seed_iterate,
    seed_weight,
    weighted_inner_fixed_point,
)
from shared.errors import InnerDivergence, MeshMismatch
from shared.models import (
    ProblemSpec,
    RhsSpec,
    build_graded_mesh,
    builtin_kernels,
    example5_problem,
)
from shared.special import gamma_fn


class TestSeed:
    """Tests for the initial iterate."""

    def test_seed_is_weighted_constant(self, power_problem):
        mesh = build_graded_mesh(power_problem.kernel, 16, 2.0)
        u0 = seed_iterate(power_problem, mesh)

        assert u0.weight_exponent == pytest.approx(0.25)
        assert np.allclose(u0.values, 1.0 / gamma_fn(0.75))
        assert seed_weight(power_problem) == pytest.approx(1.0 / gamma_fn(0.75))


class TestInnerFixedPoint:
    """Tests for the implicit right-hand side solve."""

    def test_implicit_contraction_limit(self, implicit_problem):
        F = inner_fixed_point(implicit_problem, 0.5, 0.3, 0.0, SolveConfig())
        assert F == pytest.approx(2.0, rel=1e-11)

    def test_example5_satisfies_equation(self):
        problem = example5_problem()
        F = inner_fixed_point(problem, 0.7, 1.2, 0.0, SolveConfig())
        assert F == pytest.approx(float(problem.rhs(0.7, 1.2, F)), abs=1e-12)

    def test_weighted_matches_unweighted(self, linear_kernel):
        problem = ProblemSpec(
            order=example5_problem().order,
            kernel=linear_kernel,
            u_a=1.0,
            rhs=RhsSpec("implicit_contraction", (1.0, 0.5)),
        )
        t = np.array([0.0, 0.25, 1.0])
        weight = (t - 0.0) ** problem.weight_exponent
        F_w, iters = weighted_inner_fixed_point(
            problem, t, weight, np.zeros(3), np.zeros(3), SolveConfig()
        )

        assert iters >= 1
        assert np.allclose(F_w, 2.0 * weight, atol=1e-11)

    def test_divergence_raises(self, linear_kernel):
        # Declared M* is a lie: f grows with slope 2 in v
        problem = ProblemSpec(
            order=example5_problem().order,
            kernel=linear_kernel,
            u_a=1.0,
            rhs=RhsSpec("custom_callback", callback=lambda t, u, v: 1.0 + 2.0 * v),
            lipschitz_M=0.0,
            lipschitz_Mstar=0.5,
        )
        with pytest.raises(InnerDivergence):
            inner_fixed_point(problem, 0.5, 0.0, 0.0, SolveConfig())


class TestPicardSweep:
    """Tests for picard_sweep()."""

    def test_power_source_exact_after_one_sweep(self, power_problem):
        mesh = build_graded_mesh(power_problem.kernel, 64, 2.0)
        u1, F = picard_sweep(power_problem, mesh, seed_iterate(power_problem, mesh), None, SolveConfig())

        # Weighted F is the constant 2, integrated exactly
        expected = 1.0 / gamma_fn(0.75) + 2.0 * gamma_fn(0.75) / gamma_fn(1.25) * mesh.w ** 0.5
        assert np.allclose(F.values, 2.0)
        assert np.allclose(u1.values, expected, atol=1e-12)

    def test_sweep_rejects_foreign_mesh(self, power_problem):
        mesh = build_graded_mesh(power_problem.kernel, 16, 2.0)
        other = build_graded_mesh(builtin_kernels("exp", 0.0, 1.0), 16, 2.0)

        with pytest.raises(MeshMismatch):
            picard_sweep(power_problem, mesh, seed_iterate(power_problem, other), None, SolveConfig())
