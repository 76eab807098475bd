"""Unit tests for the continuous-dependence bounds."""

import numpy as np
import pytest
from scipy import special

from services.bounds import (
    DataPerturbation,
    OrderPerturbation,
    data_dependence_bound,
    data_dependence_weighted,
    order_dependence_A,
    order_dependence_A_weighted,
    order_dependence_bound,
    perturbed_gamma,
)
from shared.errors import BoundsError, DomainError
from shared.models import FractionalOrder, build_graded_mesh, example5_problem
from shared.special import gamma_fn


class TestPerturbations:
    """Validation and derived problems."""

    def test_epsilon_must_be_below_alpha(self, growth_problem):
        pert = OrderPerturbation(epsilon=0.5, u_a_star=1.0, f_sup=1.0)
        with pytest.raises(BoundsError):
            pert.perturbed_problem(growth_problem)

    def test_epsilon_must_be_positive(self):
        with pytest.raises(BoundsError):
            OrderPerturbation(epsilon=0.0, u_a_star=1.0)

    def test_perturbed_order(self):
        problem = example5_problem()
        shifted = OrderPerturbation(epsilon=0.1, u_a_star=2.0).perturbed_problem(problem)

        assert shifted.order.alpha == pytest.approx(0.4)
        assert shifted.order.beta == pytest.approx(1.0 / 3.0)
        assert shifted.u_a == 2.0
        assert shifted.gamma == pytest.approx(perturbed_gamma(problem, 0.1))

    def test_data_perturbed_problem(self, growth_problem):
        assert DataPerturbation(0.25).perturbed_problem(growth_problem).u_a == 1.25


class TestOrderDependence:
    """Tests for A(t) and the order-dependence bound."""

    def test_A_rejects_left_endpoint(self, growth_problem):
        pert = OrderPerturbation(epsilon=0.1, u_a_star=1.0, f_sup=1.0)
        with pytest.raises(DomainError):
            order_dependence_A(growth_problem, pert, 0.0)

    def test_A_needs_f_sup(self, growth_problem):
        with pytest.raises(BoundsError):
            order_dependence_A(growth_problem, OrderPerturbation(0.1, 1.0), 0.5)

    def test_A_vanishes_without_source(self, growth_problem):
        pert = OrderPerturbation(epsilon=0.1, u_a_star=1.0, f_sup=0.0)
        # β = 1 keeps γ* = γ = 1, so the initial-value terms cancel
        assert order_dependence_A(growth_problem, pert, 0.7) == pytest.approx(0.0, abs=1e-15)

    def test_A_floor_as_epsilon_vanishes(self, growth_problem):
        pert = OrderPerturbation(epsilon=1e-10, u_a_star=1.0, f_sup=2.0)
        t = 0.64
        expected = 2.0 * 2.0 * t ** 0.5 * abs(1.0 / gamma_fn(1.5) - 1.0 / gamma_fn(0.5) ** 2)
        assert order_dependence_A(growth_problem, pert, t) == pytest.approx(expected, rel=1e-6)

    def test_weighted_A_matches_pointwise(self):
        problem = example5_problem()
        pert = OrderPerturbation(epsilon=0.1, u_a_star=1.0, f_sup=0.1)
        mesh = build_graded_mesh(problem.kernel, 16, 2.0)
        A_w = order_dependence_A_weighted(problem, pert, mesh)

        mu_star = 1.0 - perturbed_gamma(problem, 0.1)
        j = 9
        pointwise = order_dependence_A(problem, pert, float(mesh.nodes[j]))
        assert A_w.weight_exponent == pytest.approx(mu_star)
        assert A_w.values[j] == pytest.approx(mesh.w[j] ** mu_star * pointwise, rel=1e-12)
        assert np.isfinite(A_w.values[0])

    def test_bound_equals_A_without_lipschitz(self, source_problem):
        pert = OrderPerturbation(epsilon=0.1, u_a_star=1.0, f_sup=1.0)
        mesh = build_graded_mesh(source_problem.kernel, 32, 2.0)

        bound = order_dependence_bound(source_problem, pert, mesh)
        A_w = order_dependence_A_weighted(source_problem, pert, mesh)
        assert np.array_equal(bound.values, A_w.values)

    def test_example5_bound_positive(self):
        problem = example5_problem()
        pert = OrderPerturbation(epsilon=0.1, u_a_star=1.0, f_sup=0.1)
        mesh = build_graded_mesh(problem.kernel, 64, 2.0)

        bound = order_dependence_bound(problem, pert, mesh)
        A_w = order_dependence_A_weighted(problem, pert, mesh)
        assert np.all(np.isfinite(bound.values))
        assert np.all(bound.values[1:] > 0.0)
        assert np.all(bound.values >= A_w.values)


class TestDataDependence:
    """Tests for the data-dependence bound."""

    def test_zero_delta(self, growth_problem):
        assert data_dependence_bound(growth_problem, DataPerturbation(0.0), 0.5) == 0.0

    def test_growth_problem_value(self, growth_problem):
        # 0.01·E_{1/2}(0.5) = 0.01·e^{1/4}(1 + erf(1/2))
        expected = 0.01 * np.exp(0.25) * (1.0 + special.erf(0.5))
        value = data_dependence_bound(growth_problem, DataPerturbation(0.01), 1.0)
        assert value == pytest.approx(expected, rel=1e-9)
        assert value == pytest.approx(0.0195236, rel=1e-5)

    def test_no_lipschitz_gives_seed_difference(self, source_problem):
        t = 0.3
        expected = 0.2 * t ** (source_problem.gamma - 1.0) / gamma_fn(source_problem.gamma)
        value = data_dependence_bound(source_problem, DataPerturbation(-0.2), t)
        assert value == pytest.approx(expected, rel=1e-12)

    def test_homogeneous_in_delta(self):
        problem = example5_problem()
        one = data_dependence_bound(problem, DataPerturbation(0.01), 0.8)
        three = data_dependence_bound(problem, DataPerturbation(-0.03), 0.8)
        assert three == pytest.approx(3.0 * one, rel=1e-14)

    def test_singular_at_left_endpoint(self):
        with pytest.raises(DomainError):
            data_dependence_bound(example5_problem(), DataPerturbation(0.01), 0.0)

    def test_caputo_finite_at_left_endpoint(self, growth_problem):
        assert data_dependence_bound(growth_problem, DataPerturbation(0.01), 0.0) == pytest.approx(0.01)

    def test_weighted_matches_pointwise(self):
        problem = example5_problem().with_order(FractionalOrder(alpha=0.5, beta=0.5))
        mesh = build_graded_mesh(problem.kernel, 16, 2.0)
        weighted = data_dependence_weighted(problem, DataPerturbation(0.05), mesh)

        j = 7
        pointwise = data_dependence_bound(problem, DataPerturbation(0.05), float(mesh.nodes[j]))
        expected = mesh.w[j] ** problem.weight_exponent * pointwise
        assert weighted.values[j] == pytest.approx(expected, rel=1e-12)
        assert weighted.values[0] == pytest.approx(0.05 / gamma_fn(problem.gamma))
