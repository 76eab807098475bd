"""Product-integration weights for ψ-fractional integrals.

For a target node x_j = ψ(t_j) the integral

    (1/Γ(q)) ∫_{ψ(a)}^{x_j} (x_j - x)^{q-1} (x - ψ(a))^{-μ} V(x) dx

is rescaled by s = (x - ψ(a))/w_j into

    w_j^{q-μ}/Γ(q) ∫_0^1 (1 - s)^{q-1} s^{-μ} V(s·w_j) ds,

with V the piecewise-linear interpolant of the weighted samples. The kernel
(1 - s)^{q-1} s^{-μ} is integrated exactly against each hat function through
the panel moments

    M0_p = ∫_{s_p}^{s_{p+1}} (1 - s)^{q-1} s^{-μ} ds
    M1_p = ∫_{s_p}^{s_{p+1}} (1 - s)^{q-1} s^{1-μ} ds

which are closed-form power differences for μ = 0 and incomplete beta
differences otherwise.
"""

import numpy as np
from scipy import special

from shared.errors import WeightTooSingular
from shared.special import log_gamma

# Largest mesh for which the full lower-triangular matrix is materialised
DENSE_LIMIT = 2049
# Tolerance on the output growth exponent q + out_mu - μ
START_TOL = 1.0e-12


def _power_primitive(q: float, s: np.ndarray) -> np.ndarray:
    """1 - (1 - s)^q, accurate for small s and exact at s = 1."""
    with np.errstate(divide="ignore"):
        return -np.expm1(q * np.log1p(-s))


def panel_moments(s: np.ndarray, q: float, mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Moments M0_p, M1_p on consecutive panels [s_p, s_{p+1}] of [0, 1].

    Args:
        s: Increasing breakpoints with s[0] >= 0 and s[-1] <= 1
        q: Kernel order, q > 0
        mu: Weight exponent in [0, 1)

    Returns:
        (M0, M1), each of length len(s) - 1
    """
    if mu == 0.0:
        e_q = _power_primitive(q, s) / q
        e_q1 = _power_primitive(q + 1.0, s) / (q + 1.0)
        M0 = np.diff(e_q)
        M1 = np.diff(e_q - e_q1)
    else:
        i0 = special.betainc(1.0 - mu, q, s)
        i1 = special.betainc(2.0 - mu, q, s)
        M0 = special.beta(1.0 - mu, q) * np.diff(i0)
        M1 = special.beta(2.0 - mu, q) * np.diff(i1)
    return M0, M1


def hat_weights(s: np.ndarray, M0: np.ndarray, M1: np.ndarray) -> np.ndarray:
    """Combine panel moments into nodal weights of the linear interpolant."""
    ds = np.diff(s)
    left = (s[1:] * M0 - M1) / ds
    right = (M1 - s[:-1] * M0) / ds
    c = np.zeros(len(s))
    c[:-1] += left
    c[1:] += right
    # Roundoff can leave tiny negatives; the exact weights are nonnegative
    return np.maximum(c, 0.0)


class ProductWeights:
    """Quadrature weights of I^{q;ψ} on one mesh for a given input weight μ.

    Row j holds the coefficients of the weighted output at node j:

        (I^q h)_w(t_j) = Σ_i W[j, i]·V_i

    where V are the weighted input samples. The output carries weight
    out_mu (μ by default); any out_mu in [μ - q, μ] is allowed, since
    I^q h ~ w^{q-μ} for h ~ w^{-μ}. Row 0 is zero unless out_mu = μ - q,
    where it holds the exact start coefficient Γ(1-μ)/Γ(1-μ+q). Rows are
    computed once and cached.

    Example:
        table = ProductWeights(mesh.w, q=0.5, mu=0.0)
        out = table.apply(h.values)
    """

    def __init__(self, w: np.ndarray, q: float, mu: float, out_mu: float | None = None):
        self.w = np.asarray(w, dtype=float)
        self.q = float(q)
        self.mu = float(mu)
        self.out_mu = self.mu if out_mu is None else float(out_mu)
        # Growth exponent of the weighted output near w = 0
        self.start_exponent = self.q + self.out_mu - self.mu
        if self.out_mu > self.mu or self.start_exponent < -START_TOL:
            raise WeightTooSingular(
                "Output weight must lie in [μ - q, μ]",
                context={"q": self.q, "mu": self.mu, "out_mu": self.out_mu},
            )
        self._scale = np.zeros_like(self.w)
        with np.errstate(divide="ignore"):
            self._scale[1:] = np.exp(self.start_exponent * np.log(self.w[1:]) - log_gamma(self.q))
        self._rows: dict[int, np.ndarray] = {}
        self._dense: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.w)

    @property
    def scale(self) -> np.ndarray:
        """w_j^{q + out_mu - μ}/Γ(q), zero at j = 0."""
        return self._scale

    def scaled_nodes(self, j: int) -> np.ndarray:
        """s_i = w_i/w_j for i <= j."""
        s = self.w[: j + 1] / self.w[j]
        s[-1] = 1.0
        return s

    def moments(self, j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(s, M0, M1) for target node j >= 1."""
        s = self.scaled_nodes(j)
        M0, M1 = panel_moments(s, self.q, self.mu)
        return s, M0, M1

    def unscaled_row(self, j: int) -> np.ndarray:
        """Hat weights c_i of ∫_0^1 (1 - s)^{q-1} s^{-μ} V ds, i <= j."""
        if j == 0:
            return np.zeros(1)
        s, M0, M1 = self.moments(j)
        return hat_weights(s, M0, M1)

    def _start_row(self) -> np.ndarray:
        if abs(self.start_exponent) <= START_TOL:
            return np.array([np.exp(log_gamma(1.0 - self.mu) - log_gamma(1.0 - self.mu + self.q))])
        return np.zeros(1)

    def row(self, j: int) -> np.ndarray:
        """Coefficients W[j, :j+1] (read-only, cached)."""
        cached = self._rows.get(j)
        if cached is None:
            cached = self._start_row() if j == 0 else self._scale[j] * self.unscaled_row(j)
            cached.flags.writeable = False
            self._rows[j] = cached
        return cached

    def matrix(self) -> np.ndarray:
        """Dense lower-triangular weight matrix, built once."""
        if self._dense is None:
            n = len(self.w)
            dense = np.zeros((n, n))
            for j in range(n):
                dense[j, : j + 1] = self.row(j)
            dense.flags.writeable = False
            self._dense = dense
        return self._dense

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Weighted output for all nodes."""
        values = np.asarray(values, dtype=float)
        if len(self.w) <= DENSE_LIMIT:
            return self.matrix() @ values
        out = np.empty_like(values)
        for j in range(len(values)):
            out[j] = self.row(j) @ values[: j + 1]
        return out
