"""Configuration for the calculus verification suites."""

from dataclasses import dataclass

from shared.special import DEFAULT_POLICY, MlSeriesPolicy


@dataclass(frozen=True)
class VerificationConfig:
    """Mesh sizes and tolerances for the identity suites.

    Attributes:
        mesh_N: Intervals of the fine verification mesh
        coarse_mesh_N: Intervals of the coarse mesh in the convergence test
        grading_r: Grading exponent of verification meshes
        power_rule_tol: Max weighted error of frac_integral vs the power rule
        power_rule_ratio: Required error reduction from coarse to fine mesh
        semigroup_tol: Max deviation of the semigroup identity
        derivative_tol: Max deviation of identities involving a derivative
        ml_tol: Max relative error of Mittag-Leffler identities
        exact_floor: Errors below this count as exact in the ratio test
        scheme: Derivative scheme (product or stencil)
        ml_policy: Mittag-Leffler series policy of the ml and gronwall suites
    """
    mesh_N: int = 1024
    coarse_mesh_N: int = 512
    grading_r: float = 2.0
    power_rule_tol: float = 5.0e-4
    power_rule_ratio: float = 0.4
    semigroup_tol: float = 5.0e-4
    derivative_tol: float = 1.0e-2
    ml_tol: float = 1.0e-10
    exact_floor: float = 1.0e-10
    scheme: str = "product"
    ml_policy: MlSeriesPolicy = DEFAULT_POLICY

    @classmethod
    def from_settings(cls, verify: dict, ml_policy: MlSeriesPolicy | None = None) -> "VerificationConfig":
        """Build from the `verify` block of settings.yaml."""
        defaults = cls()
        return cls(
            mesh_N=int(verify.get("mesh_N", defaults.mesh_N)),
            coarse_mesh_N=int(verify.get("coarse_mesh_N", defaults.coarse_mesh_N)),
            grading_r=float(verify.get("grading_r", defaults.grading_r)),
            power_rule_tol=float(verify.get("power_rule_tol", defaults.power_rule_tol)),
            power_rule_ratio=float(verify.get("power_rule_ratio", defaults.power_rule_ratio)),
            semigroup_tol=float(verify.get("semigroup_tol", defaults.semigroup_tol)),
            derivative_tol=float(verify.get("derivative_tol", defaults.derivative_tol)),
            ml_tol=float(verify.get("ml_tol", defaults.ml_tol)),
            scheme=str(verify.get("scheme", defaults.scheme)),
            ml_policy=ml_policy or defaults.ml_policy,
        )


def get_default_config() -> VerificationConfig:
    """Get default verification configuration.

    Returns:
        VerificationConfig with default settings
    """
    return VerificationConfig()


def get_quick_config() -> VerificationConfig:
    """Smaller meshes for fast test runs.

    Returns:
        VerificationConfig with N = 256 / 128
    """
    return VerificationConfig(mesh_N=256, coarse_mesh_N=128)
