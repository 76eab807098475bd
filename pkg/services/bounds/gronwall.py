"""Generalized Gronwall envelope with ψ-scaled singular kernels.

If u <= v + h(t)·∫ ψ′(s)(ψ(t) - ψ(s))^{α-1} u(s) ds with h nonnegative and
nondecreasing, then

    u(t) <= v(t) + Σ_{k>=1} (h(t)Γ(α))^k · I^{kα;ψ}v(t)

and for constant v the right side is v·E_α(h·Γ(α)·w^α).
"""

from dataclasses import dataclass

import numpy as np

from shared.errors import BoundsError, SeriesCap
from shared.logging import get_logger
from shared.models import GradedMesh, PsiKernel, WeightedGridFunction
from shared.special import MlSeriesPolicy, gamma_fn, mittag_leffler_1

from services.bounds.config import MIN_K_TERMS, BoundsConfig, get_default_config
from services.calculus import ProductWeights

logger = get_logger("bounds")


@dataclass(frozen=True, eq=False)
class GronwallInput:
    """Data of the Gronwall inequality.

    Attributes:
        v: Nonnegative grid function (any weight exponent)
        h: Nonnegative nondecreasing constant or nodal array
        alpha: Kernel order, α > 0
        kernel: ψ kernel; must be the kernel of v's mesh
    """
    v: WeightedGridFunction
    h: float | np.ndarray
    alpha: float
    kernel: PsiKernel

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise BoundsError("Gronwall order must be positive", {"alpha": self.alpha})
        if self.v.mesh.kernel.label != self.kernel.label:
            raise BoundsError("v lives on a mesh of another kernel", {"kernel": self.kernel.label})
        if np.any(self.v.values < 0.0):
            raise BoundsError("v must be nonnegative")
        h = np.asarray(self.h, dtype=float)
        if h.ndim == 1 and h.shape != self.v.values.shape:
            raise BoundsError("h must be a constant or one value per node")
        if np.any(h < 0.0) or not np.all(np.isfinite(h)):
            raise BoundsError("h must be finite and nonnegative")
        if h.ndim == 1 and np.any(np.diff(h) < 0.0):
            raise BoundsError("h must be nondecreasing")

    @property
    def mesh(self) -> GradedMesh:
        return self.v.mesh

    @property
    def h_nodes(self) -> np.ndarray:
        """h at every node."""
        return np.broadcast_to(np.asarray(self.h, dtype=float), self.v.values.shape)


def gronwall_envelope(
    inp: GronwallInput,
    K_terms: int | None = None,
    cfg: BoundsConfig | None = None,
) -> WeightedGridFunction:
    """Right side of the Gronwall inequality at every node.

    The k-series stops once cfg.consecutive_hits successive terms are below
    cfg.series_tol relative to the partial sum.

    Args:
        inp: Inequality data
        K_terms: Series cap (default cfg.K_terms)
        cfg: Bounds configuration

    Returns:
        Envelope with the weight exponent of inp.v

    Raises:
        SeriesCap: If the series has not settled after K_terms terms
    """
    cfg = cfg or get_default_config()
    K_terms = K_terms or cfg.K_terms
    if K_terms < MIN_K_TERMS:
        raise BoundsError(f"K_terms must be at least {MIN_K_TERMS}", {"K_terms": K_terms})

    v = inp.v
    total = v.values.copy()
    factor = inp.h_nodes * gamma_fn(inp.alpha)
    if not np.any(factor > 0.0):
        return v

    hits = 0
    power = np.ones_like(total)
    for k in range(1, K_terms + 1):
        power = power * factor
        term = power * ProductWeights(v.mesh.w, k * inp.alpha, v.mu).apply(v.values)
        if not np.all(np.isfinite(term)):
            raise SeriesCap("Gronwall series overflowed", {"k": k})
        total = total + term
        scale = np.max(np.abs(total))
        if np.max(np.abs(term)) <= cfg.series_tol * scale:
            hits += 1
            if hits >= cfg.consecutive_hits:
                logger.debug(f"Gronwall series settled after {k} terms")
                return v.with_values(total)
        else:
            hits = 0

    raise SeriesCap(
        f"Gronwall series did not settle in {K_terms} terms",
        context={"K_terms": K_terms, "alpha": inp.alpha, "h_max": float(np.max(inp.h_nodes))},
    )


def gronwall_closed_form(
    v0: float, h0: float, alpha: float, mesh: GradedMesh, policy: MlSeriesPolicy | None = None
) -> WeightedGridFunction:
    """v0·E_α(h0·Γ(α)·w^α) for constant v and h (unweighted)."""
    if v0 < 0.0 or h0 < 0.0:
        raise BoundsError("v and h must be nonnegative", {"v0": v0, "h0": h0})
    z = h0 * gamma_fn(alpha) * mesh.w ** alpha
    return WeightedGridFunction(mesh, 0.0, v0 * np.asarray(mittag_leffler_1(alpha, z, policy)))
