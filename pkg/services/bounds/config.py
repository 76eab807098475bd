"""Configuration for the BOUNDS service."""

from dataclasses import dataclass

from shared.errors import ConfigValidationError
from shared.special import DEFAULT_POLICY, MlSeriesPolicy

# Smallest series cap accepted for the Gronwall envelope
MIN_K_TERMS = 10


@dataclass(frozen=True)
class BoundsConfig:
    """Gronwall series and comparison settings.

    Attributes:
        K_terms: Largest number of series terms in the Gronwall envelope
        series_tol: Relative size below which a series term counts as negligible
        consecutive_hits: Negligible terms in a row needed to stop the series
        margin_slack: Tolerated negative margin bound - |u - u*| at interior nodes
        ml_policy: Mittag-Leffler series policy for the data bound
    """
    K_terms: int = 200
    series_tol: float = 1.0e-14
    consecutive_hits: int = 3
    margin_slack: float = 5.0e-4
    ml_policy: MlSeriesPolicy = DEFAULT_POLICY

    def __post_init__(self):
        if self.K_terms < MIN_K_TERMS:
            raise ConfigValidationError(
                f"K_terms must be at least {MIN_K_TERMS}",
                {"field": "K_terms", "value": self.K_terms},
            )
        if not self.series_tol > 0.0:
            raise ConfigValidationError("series_tol must be positive", {"field": "series_tol"})
        if self.consecutive_hits < 1:
            raise ConfigValidationError(
                "consecutive_hits must be at least 1", {"field": "consecutive_hits"}
            )
        if not self.margin_slack >= 0.0:
            raise ConfigValidationError("margin_slack must be nonnegative", {"field": "margin_slack"})

    @classmethod
    def from_settings(cls, bounds: dict, ml_policy: MlSeriesPolicy | None = None) -> "BoundsConfig":
        """Build from the `bounds` block of settings.yaml."""
        defaults = cls()
        return cls(
            K_terms=int(bounds.get("K_terms", defaults.K_terms)),
            series_tol=float(bounds.get("series_tol", defaults.series_tol)),
            margin_slack=float(bounds.get("margin_slack", defaults.margin_slack)),
            ml_policy=ml_policy or defaults.ml_policy,
        )


def get_default_config() -> BoundsConfig:
    """Get default bounds configuration.

    Returns:
        BoundsConfig with default settings
    """
    return BoundsConfig()
