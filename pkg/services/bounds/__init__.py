"""BOUNDS Service - Gronwall envelope and continuous-dependence bounds.

Provides:
- Generalized Gronwall envelope (series and Mittag-Leffler closed form)
- Order-dependence bound for α -> α - ε
- Data-dependence bound for u_a -> u_a + δ
- Comparisons of both bounds against pairs of computed solutions

Example:
    from services.bounds import BoundsService, DataPerturbation
    from shared.models import example5_problem

    report = BoundsService().data(example5_problem(), DataPerturbation(0.01))
    report.min_margin >= -report.slack    # True
"""

from services.bounds.config import BoundsConfig, get_default_config
from services.bounds.dependence import (
    DataPerturbation,
    OrderPerturbation,
    data_dependence_bound,
    data_dependence_weighted,
    order_dependence_A,
    order_dependence_A_weighted,
    order_dependence_bound,
    perturbed_gamma,
)
from services.bounds.gronwall import GronwallInput, gronwall_closed_form, gronwall_envelope
from services.bounds.service import (
    BoundsService,
    DependenceReport,
    verify_dependence,
    verify_order_dependence,
)

__all__ = [
    # Config
    "BoundsConfig",
    "get_default_config",
    # Gronwall
    "GronwallInput",
    "gronwall_envelope",
    "gronwall_closed_form",
    # Dependence
    "OrderPerturbation",
    "DataPerturbation",
    "order_dependence_A",
    "order_dependence_A_weighted",
    "order_dependence_bound",
    "data_dependence_bound",
    "data_dependence_weighted",
    "perturbed_gamma",
    # Service
    "BoundsService",
    "DependenceReport",
    "verify_dependence",
    "verify_order_dependence",
]
