"""Two-parameter Mittag-Leffler function by direct series summation.

E_{ν,μ}(z) = Σ_k z^k / Γ(νk + μ). Terms are formed in log space so that
z^k and Γ(νk + μ) never overflow separately; summation stops once the
term is negligible relative to the partial sum for several consecutive k,
which guards against the growing early terms seen when ν < 1.

Partial sums are Kahan-compensated. For z < 0 the series alternates and
the result is only as accurate as eps·Σ|term| / |Σ term| allows: around
E_1(-30) every digit is lost to cancellation even though each term is
exact to rounding. The ratio is tracked and a warning is logged once the
estimated relative error passes cancellation_tol.
"""

from dataclasses import dataclass

import numpy as np

from shared.errors import ConvergenceError, DomainError
from shared.logging import get_logger
from shared.special.gamma import log_gamma

logger = get_logger("special")


@dataclass(frozen=True)
class MlSeriesPolicy:
    """Truncation policy for the Mittag-Leffler series.

    Attributes:
        term_tol: Relative tail tolerance
        max_terms: Maximum number of series terms
        arg_cap: Largest |z| accepted
        consecutive_hits: Number of consecutive small terms required to stop
        cancellation_tol: Estimated relative error above which a warning is logged
    """
    term_tol: float = 1.0e-14
    max_terms: int = 2000
    arg_cap: float = 50.0
    consecutive_hits: int = 3
    cancellation_tol: float = 1.0e-8

    def __post_init__(self):
        if not self.term_tol > 0.0:
            raise DomainError("term_tol must be positive", {"term_tol": self.term_tol})
        if self.max_terms < 100:
            raise DomainError("max_terms must be at least 100", {"max_terms": self.max_terms})
        if not self.arg_cap > 0.0:
            raise DomainError("arg_cap must be positive", {"arg_cap": self.arg_cap})
        if not self.cancellation_tol > 0.0:
            raise DomainError(
                "cancellation_tol must be positive", {"cancellation_tol": self.cancellation_tol}
            )

    @classmethod
    def from_settings(cls, special: dict) -> "MlSeriesPolicy":
        """Build a policy from the `special` block of settings.yaml."""
        return cls(
            term_tol=float(special.get("term_tol", cls.term_tol)),
            max_terms=int(special.get("max_terms", cls.max_terms)),
            arg_cap=float(special.get("arg_cap", cls.arg_cap)),
            cancellation_tol=float(special.get("cancellation_tol", cls.cancellation_tol)),
        )


DEFAULT_POLICY = MlSeriesPolicy()


def mittag_leffler(nu: float, mu: float, z, policy: MlSeriesPolicy | None = None):
    """Evaluate E_{ν,μ}(z) for real z.

    Args:
        nu: First parameter, ν > 0
        mu: Second parameter, μ > 0
        z: Real scalar or array with |z| <= policy.arg_cap
        policy: Series truncation policy

    Returns:
        E_{ν,μ}(z) with the shape of z (float for scalars)

    Raises:
        DomainError: On ν <= 0, μ <= 0 or |z| > arg_cap
        ConvergenceError: If max_terms is reached or the sum overflows
    """
    policy = policy or DEFAULT_POLICY
    if not (nu > 0.0 and mu > 0.0):
        raise DomainError(
            "Mittag-Leffler parameters must be positive",
            context={"nu": nu, "mu": mu},
        )

    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(~np.isfinite(zz)) or np.any(np.abs(zz) > policy.arg_cap):
        raise DomainError(
            f"|z| exceeds the series argument cap {policy.arg_cap}",
            context={"z_max": float(np.max(np.abs(zz))), "arg_cap": policy.arg_cap},
        )

    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(zz))
    negative = zz < 0.0

    total = np.zeros_like(zz)
    carry = np.zeros_like(zz)
    magnitude = np.zeros_like(zz)
    hits = np.zeros(zz.shape, dtype=int)
    for k in range(policy.max_terms):
        lg = log_gamma(nu * k + mu)
        if k == 0:
            term = np.full_like(zz, np.exp(-lg))
        else:
            term = np.exp(k * log_abs - lg)
            if k % 2 == 1:
                term = np.where(negative, -term, term)
        y = term - carry
        updated = total + y
        carry = (updated - total) - y
        total = updated
        magnitude = magnitude + np.abs(term)
        if not np.all(np.isfinite(total)):
            raise ConvergenceError(
                "Mittag-Leffler series overflowed",
                context={"nu": nu, "mu": mu, "k": k},
            )

        small = np.abs(term) <= policy.term_tol * np.abs(total)
        hits = np.where(small, hits + 1, 0)
        if np.all(hits >= policy.consecutive_hits):
            logger.debug(f"E_({nu},{mu}) converged after {k + 1} terms")
            _warn_on_cancellation(nu, mu, zz, total, magnitude, policy)
            if np.ndim(z) == 0:
                return float(total[0])
            return total.reshape(np.shape(z))

    raise ConvergenceError(
        f"Mittag-Leffler series did not converge in {policy.max_terms} terms",
        context={"nu": nu, "mu": mu, "max_terms": policy.max_terms},
    )


def _warn_on_cancellation(nu, mu, zz, total, magnitude, policy: MlSeriesPolicy) -> None:
    with np.errstate(divide="ignore", invalid="ignore"):
        lost = np.finfo(float).eps * magnitude / np.abs(total)
    lost = np.where(np.isfinite(lost), lost, np.inf)
    worst = int(np.argmax(lost))
    if lost[worst] > policy.cancellation_tol:
        logger.warning(
            f"E_({nu},{mu})({zz[worst]:.6g}) lost accuracy to cancellation: "
            f"estimated relative error {lost[worst]:.1e}"
        )


def mittag_leffler_1(nu: float, z, policy: MlSeriesPolicy | None = None):
    """One-parameter E_ν(z) = E_{ν,1}(z)."""
    return mittag_leffler(nu, 1.0, z, policy)
