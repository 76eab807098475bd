"""Special functions used throughout the toolkit.

Example:
    from shared.special import gamma_fn, mittag_leffler

    gamma_fn(0.5)                   # 1.7724538509055159
    mittag_leffler(0.5, 1.0, 0.5)   # 1.9523620...
"""

from shared.special.gamma import gamma_fn, log_gamma, reciprocal_gamma
from shared.special.mittag_leffler import (
    DEFAULT_POLICY,
    MlSeriesPolicy,
    mittag_leffler,
    mittag_leffler_1,
)

__all__ = [
    "gamma_fn",
    "log_gamma",
    "reciprocal_gamma",
    "MlSeriesPolicy",
    "DEFAULT_POLICY",
    "mittag_leffler",
    "mittag_leffler_1",
]
