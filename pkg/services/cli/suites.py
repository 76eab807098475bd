"""Verification suites run by `cli.py verify <suite>`.

Each suite evaluates a fixed matrix of identity checks and compares every
deviation with its tolerance from VerificationConfig.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

from shared.errors import ConfigValidationError
from shared.logging import get_logger
from shared.models import (
    FractionalOrder,
    WeightedGridFunction,
    build_graded_mesh,
    builtin_kernels,
)
from shared.special import gamma_fn, mittag_leffler
from services.bounds import GronwallInput, gronwall_closed_form, gronwall_envelope
from services.calculus import (
    VerificationConfig,
    check_composition,
    check_left_inverse,
    check_power_rule,
    check_semigroup,
    check_thm_expansion,
)

logger = get_logger("cli")

KERNELS = ("linear", "sqrt_shift", "exp")
POWER_ALPHAS = (0.3, 0.5, 0.9)
POWER_DELTAS = (0.5, 1.0, 1.5)
SEMIGROUP_ORDERS = ((0.5, 0.5), (0.3, 0.9))
DERIVATIVE_ORDERS = ((0.5, 0.5), (0.3, 0.9))
COMPOSITION_ORDERS = ((0.5, 0.5), (0.5, 0.0), (0.5, 1.0))


@dataclass(frozen=True)
class SuiteCheck:
    """One row of a suite report.

    Attributes:
        label: Case description
        deviation: Measured deviation (or error ratio)
        tolerance: Largest accepted deviation
    """
    label: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tolerance)


@dataclass
class SuiteResult:
    """All checks of one suite."""
    name: str
    checks: list[SuiteCheck] = field(default_factory=list)

    def add(self, label: str, deviation: float, tolerance: float) -> None:
        self.checks.append(SuiteCheck(label, float(deviation), float(tolerance)))

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def max_deviation(self) -> float:
        return max((check.deviation for check in self.checks), default=0.0)

    @property
    def failures(self) -> list[SuiteCheck]:
        return [check for check in self.checks if not check.passed]


def _mesh(kernel_name: str, N: int, cfg: VerificationConfig):
    return build_graded_mesh(builtin_kernels(kernel_name, 0.0, 1.0), N, cfg.grading_r)


def power_rule_suite(cfg: VerificationConfig) -> SuiteResult:
    """Integral of w^{δ-1} against the closed form, plus the coarse/fine error ratio."""
    result = SuiteResult("power_rule")
    for name in KERNELS:
        fine = _mesh(name, cfg.mesh_N, cfg)
        coarse = _mesh(name, cfg.coarse_mesh_N, cfg)
        for alpha in POWER_ALPHAS:
            for delta in POWER_DELTAS:
                label = f"{name} α={alpha} δ={delta}"
                fine_err = check_power_rule(fine.kernel, alpha, delta, fine).deviation
                result.add(label, fine_err, cfg.power_rule_tol)

                coarse_err = check_power_rule(coarse.kernel, alpha, delta, coarse).deviation
                if coarse_err > cfg.exact_floor:
                    result.add(f"{label} ratio", fine_err / coarse_err, cfg.power_rule_ratio)
    return result


def semigroup_suite(cfg: VerificationConfig) -> SuiteResult:
    result = SuiteResult("semigroup")
    for name in ("linear", "exp"):
        mesh = _mesh(name, cfg.mesh_N, cfg)
        inputs = {
            "h=1": WeightedGridFunction.constant(mesh, 1.0),
            "h=w^0.2": WeightedGridFunction.power(mesh, 0.2, 0.0),
        }
        for alpha, beta_ord in SEMIGROUP_ORDERS:
            for h_label, h in inputs.items():
                report = check_semigroup(mesh.kernel, alpha, beta_ord, mesh, h)
                result.add(f"{name} α={alpha} β={beta_ord} {h_label}", report.deviation, cfg.semigroup_tol)
    return result


def inverse_suite(cfg: VerificationConfig) -> SuiteResult:
    result = SuiteResult("inverse")
    for name in ("linear", "sqrt_shift"):
        mesh = _mesh(name, cfg.mesh_N, cfg)
        inputs = {
            "h=1": WeightedGridFunction.constant(mesh, 1.0),
            "h=w^0.5": WeightedGridFunction.power(mesh, 0.5, 0.0),
        }
        for alpha, beta in DERIVATIVE_ORDERS:
            order = FractionalOrder(alpha=alpha, beta=beta)
            for h_label, h in inputs.items():
                report = check_left_inverse(mesh.kernel, order, mesh, h, cfg.scheme)
                result.add(f"{name} {order} {h_label}", report.deviation, cfg.derivative_tol)
    return result


def expansion_suite(cfg: VerificationConfig) -> SuiteResult:
    """Seed alone (its derivative vanishes) and seed + w^α."""
    result = SuiteResult("expansion")
    for name in ("linear", "sqrt_shift"):
        mesh = _mesh(name, cfg.mesh_N, cfg)
        for alpha, beta in DERIVATIVE_ORDERS:
            order = FractionalOrder(alpha=alpha, beta=beta)
            mu = order.weight_exponent
            seed = WeightedGridFunction.power(
                mesh, order.gamma - 1.0, mu, scale=1.0 / gamma_fn(order.gamma)
            )
            inputs = {
                "seed": seed,
                "seed+w^α": seed + WeightedGridFunction.power(mesh, alpha, mu),
            }
            for h_label, h in inputs.items():
                report = check_thm_expansion(mesh.kernel, order, mesh, h, 1.0, cfg.scheme)
                result.add(f"{name} {order} {h_label}", report.deviation, cfg.derivative_tol)
    return result


def composition_suite(cfg: VerificationConfig) -> SuiteResult:
    result = SuiteResult("composition")
    mesh = _mesh("linear", cfg.mesh_N, cfg)
    h = WeightedGridFunction.power(mesh, 0.5, 0.0)
    for alpha, beta in COMPOSITION_ORDERS:
        order = FractionalOrder(alpha=alpha, beta=beta)
        report = check_composition(mesh.kernel, order, mesh, h, cfg.scheme)
        result.add(f"linear {order} h=w^0.5", report.deviation, cfg.derivative_tol)
    return result


def _relative(value: float, expected: float) -> float:
    return abs(value - expected) / abs(expected)


def ml_suite(cfg: VerificationConfig) -> SuiteResult:
    """Mittag-Leffler values with elementary closed forms (relative errors)."""
    result = SuiteResult("ml")
    e_value = mittag_leffler(1.0, 1.0, 1.0, cfg.ml_policy)
    result.add("E_{1,1}(1) = e", _relative(e_value, math.e), cfg.ml_tol)
    for z in (0.25, 1.0, 4.0):
        expected = math.cosh(math.sqrt(z))
        value = mittag_leffler(2.0, 1.0, z, cfg.ml_policy)
        result.add(f"E_{{2,1}}({z}) = cosh√z", _relative(value, expected), cfg.ml_tol)
    erf_form = math.exp(0.25) * (1.0 + special.erf(0.5))
    result.add(
        "E_{0.5,1}(0.5) = e^{1/4}(1 + erf ½)",
        _relative(mittag_leffler(0.5, 1.0, 0.5, cfg.ml_policy), erf_form),
        cfg.ml_tol,
    )
    return result


def gronwall_suite(cfg: VerificationConfig) -> SuiteResult:
    """Series envelope against E_α closed form and the classical α = 1 case."""
    result = SuiteResult("gronwall")
    kernel = builtin_kernels("linear", 0.0, 1.0)
    mesh = build_graded_mesh(kernel, cfg.coarse_mesh_N, cfg.grading_r)
    for alpha, h in ((0.5, 1.0), (0.5, 2.0), (0.9, 1.0)):
        v = WeightedGridFunction.constant(mesh, 1.0)
        series = gronwall_envelope(GronwallInput(v=v, h=h, alpha=alpha, kernel=kernel))
        closed = gronwall_closed_form(1.0, h, alpha, mesh, cfg.ml_policy)
        deviation = float(np.max(np.abs(series.values - closed.values) / closed.values))
        result.add(f"α={alpha} h={h} series vs E_α", deviation, 1.0e-6)

    uniform = build_graded_mesh(kernel, cfg.coarse_mesh_N, 1.0)
    v = WeightedGridFunction.constant(uniform, 2.0)
    series = gronwall_envelope(GronwallInput(v=v, h=0.5, alpha=1.0, kernel=kernel))
    expected = 2.0 * np.exp(0.5 * uniform.nodes)
    result.add("α=1 h=0.5 vs 2e^{h(t-a)}", float(np.max(np.abs(series.values / expected - 1.0))), 1.0e-8)
    return result


SUITES: dict[str, Callable[[VerificationConfig], SuiteResult]] = {
    "power_rule": power_rule_suite,
    "semigroup": semigroup_suite,
    "inverse": inverse_suite,
    "expansion": expansion_suite,
    "ml": ml_suite,
    "composition": composition_suite,
    "gronwall": gronwall_suite,
}


def suite_names() -> tuple[str, ...]:
    return (*SUITES, "all")


def run_suites(name: str, cfg: VerificationConfig) -> list[SuiteResult]:
    """Run one suite, or every suite for name == "all".

    Raises:
        ConfigValidationError: If the suite name is unknown
    """
    if name == "all":
        selected = list(SUITES)
    elif name in SUITES:
        selected = [name]
    else:
        raise ConfigValidationError(
            f"Unknown suite '{name}'",
            context={"field": "suite", "available": list(suite_names())},
        )

    results = []
    for suite in selected:
        result = SUITES[suite](cfg)
        status = "passed" if result.passed else f"{len(result.failures)} failure(s)"
        logger.info(f"Suite {suite}: {len(result.checks)} checks, {status}")
        results.append(result)
    return results
