"""Configuration for the SOLVER service."""

from dataclasses import dataclass

from shared.errors import ConfigValidationError
from shared.special import DEFAULT_POLICY, MlSeriesPolicy


@dataclass(frozen=True)
class SolveConfig:
    """Picard scheme settings.

    Attributes:
        mesh_N: Mesh intervals per partition subinterval
        picard_tol: Stop when the weighted successive difference is below this
        picard_max_iters: Sweeps allowed per subinterval
        inner_tol: Tolerance of the implicit right-hand side fixed point
        inner_max_iters: Iterations allowed for that fixed point
        safety_factor: Upper bound for every contraction constant, in (0, 1)
        max_intervals: Largest partition accepted
        grading_r: Grading of the first subinterval (None: max(1, 2/γ))
        scheme: Derivative scheme used by a-posteriori checks
        ml_policy: Mittag-Leffler series policy for the sensitivity certificate
    """
    mesh_N: int = 512
    picard_tol: float = 1.0e-10
    picard_max_iters: int = 200
    inner_tol: float = 1.0e-12
    inner_max_iters: int = 100
    safety_factor: float = 0.9
    max_intervals: int = 10000
    grading_r: float | None = None
    scheme: str = "product"
    ml_policy: MlSeriesPolicy = DEFAULT_POLICY

    def __post_init__(self):
        for name in ("picard_tol", "inner_tol"):
            if not getattr(self, name) > 0.0:
                raise ConfigValidationError(f"{name} must be positive", {"field": name})
        for name in ("picard_max_iters", "inner_max_iters", "max_intervals"):
            if getattr(self, name) < 1:
                raise ConfigValidationError(f"{name} must be at least 1", {"field": name})
        if not 0.0 < self.safety_factor < 1.0:
            raise ConfigValidationError(
                "safety_factor must lie in (0, 1)",
                {"field": "safety_factor", "value": self.safety_factor},
            )
        if self.mesh_N < 2:
            raise ConfigValidationError("mesh_N must be at least 2", {"field": "mesh_N"})
        if self.grading_r is not None and not self.grading_r >= 1.0:
            raise ConfigValidationError("grading_r must be at least 1", {"field": "grading_r"})

    @classmethod
    def from_settings(cls, solver: dict, **overrides) -> "SolveConfig":
        """Build from the `solver` block of settings.yaml, then apply overrides."""
        values = {
            key: solver[key]
            for key in (
                "mesh_N", "picard_tol", "picard_max_iters", "inner_tol",
                "inner_max_iters", "safety_factor", "max_intervals",
            )
            if key in solver
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def get_default_config() -> SolveConfig:
    """Get default solver configuration.

    Returns:
        SolveConfig with default settings
    """
    return SolveConfig()

