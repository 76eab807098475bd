"""CALCULUS Service - ψ-fractional operators on graded meshes.

Provides:
- Product-integration weights for I^{α;ψ}
- Riemann-Liouville, Caputo and Hilfer derivatives
- The exact power rule used as an oracle
- Identity checkers (semigroup, left inverse, expansion, composition)

Example:
    from services.calculus import FracIntegralOperator, frac_integral
    from shared.models import WeightedGridFunction, build_graded_mesh, builtin_kernels

    kernel = builtin_kernels("linear", 0.0, 1.0)
    mesh = build_graded_mesh(kernel, N=512, r=2.0)
    h = WeightedGridFunction.constant(mesh, 1.0)

    out = frac_integral(FracIntegralOperator(kernel, 0.5, mesh), h)
    out.values[-1]    # ≈ 1.1283792 (2/√π)
"""

from services.calculus.config import (
    VerificationConfig,
    get_default_config,
    get_quick_config,
)
from services.calculus.identities import (
    IdentityReport,
    check_composition,
    check_left_inverse,
    check_power_rule,
    check_semigroup,
    check_thm_expansion,
)
from services.calculus.operators import (
    SCHEMES,
    FracIntegralOperator,
    HilferOperator,
    caputo_derivative,
    frac_integral,
    hilfer_derivative,
    power_rule_exact,
    power_rule_weighted,
    rl_derivative,
)
from services.calculus.quadrature import ProductWeights, panel_moments

__all__ = [
    # Config
    "VerificationConfig",
    "get_default_config",
    "get_quick_config",
    # Operators
    "SCHEMES",
    "FracIntegralOperator",
    "HilferOperator",
    "frac_integral",
    "hilfer_derivative",
    "rl_derivative",
    "caputo_derivative",
    "power_rule_exact",
    "power_rule_weighted",
    # Quadrature
    "ProductWeights",
    "panel_moments",
    # Identities
    "IdentityReport",
    "check_power_rule",
    "check_semigroup",
    "check_left_inverse",
    "check_thm_expansion",
    "check_composition",
]
