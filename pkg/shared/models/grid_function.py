"""Grid functions stored in the weighted representation v = w^μ·u."""

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from shared.errors import MeshError, WeightTooSingular
from shared.models.mesh import GradedMesh


@dataclass(frozen=True, eq=False)
class WeightedGridFunction:
    """Samples v_j = w_j^μ·u(t_j) on a mesh.

    The weighted value at t_0 is the limit of w^μ·u as t -> a, so it stays
    finite even when u is singular there.

    Attributes:
        mesh: Mesh the samples live on
        weight_exponent: μ in [0, 1)
        values: Weighted samples v_j (read-only)
        endpoint_extrapolated: True if v_0 was extrapolated rather than computed
    """
    mesh: GradedMesh
    weight_exponent: float
    values: np.ndarray
    endpoint_extrapolated: bool = False

    def __post_init__(self):
        if not 0.0 <= self.weight_exponent < 1.0:
            raise WeightTooSingular(
                "Weight exponent must lie in [0, 1)",
                context={"weight_exponent": self.weight_exponent},
            )
        values = np.array(self.values, dtype=float)
        if values.shape != self.mesh.nodes.shape:
            raise MeshError(
                "Grid function size does not match its mesh",
                context={"values": values.shape, "nodes": self.mesh.nodes.shape},
            )
        if not np.all(np.isfinite(values)):
            raise MeshError("Weighted values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def mu(self) -> float:
        return self.weight_exponent

    # Construction

    @classmethod
    def zeros(cls, mesh: GradedMesh, weight_exponent: float = 0.0) -> "WeightedGridFunction":
        return cls(mesh, weight_exponent, np.zeros(len(mesh.nodes)))

    @classmethod
    def constant(
        cls, mesh: GradedMesh, value: float, weight_exponent: float = 0.0
    ) -> "WeightedGridFunction":
        """Constant weighted values (u = value·w^{-μ})."""
        return cls(mesh, weight_exponent, np.full(len(mesh.nodes), float(value)))

    @classmethod
    def power(
        cls,
        mesh: GradedMesh,
        exponent: float,
        weight_exponent: float = 0.0,
        scale: float = 1.0,
    ) -> "WeightedGridFunction":
        """u = scale·w^p, stored with weight μ (requires p + μ >= 0)."""
        q = exponent + weight_exponent
        if abs(q) <= 1.0e-14:
            q = 0.0
        if q < 0.0:
            raise WeightTooSingular(
                "w^p is not bounded under this weight",
                context={"exponent": exponent, "weight_exponent": weight_exponent},
            )
        w = mesh.w
        values = np.empty_like(w)
        values[1:] = scale * w[1:] ** q
        values[0] = scale if q == 0.0 else 0.0
        return cls(mesh, weight_exponent, values)

    @classmethod
    def from_function(
        cls,
        mesh: GradedMesh,
        func: Callable[[np.ndarray], np.ndarray],
        weight_exponent: float = 0.0,
        start_value: float | None = None,
    ) -> "WeightedGridFunction":
        """Sample an unweighted function u(t) and weight it.

        With μ > 0 the value at t_0 is start_value when given (the known
        limit of w^μ·u) and is extrapolated from t_1, t_2 otherwise.
        """
        w = mesh.w
        t = mesh.nodes
        values = np.empty_like(w)
        extrapolated = False
        if weight_exponent == 0.0:
            values[:] = np.asarray(func(t), dtype=float)
        else:
            values[1:] = w[1:] ** weight_exponent * np.asarray(func(t[1:]), dtype=float)
            if start_value is not None:
                values[0] = start_value
            else:
                values[0] = extrapolate_start(w, values)
                extrapolated = True
        return cls(mesh, weight_exponent, values, extrapolated)

    # Views

    def unweighted(self) -> np.ndarray:
        """u(t_j) = v_j·w_j^{-μ}; NaN at t_0 when μ > 0."""
        u = np.array(self.values)
        if self.weight_exponent > 0.0:
            w = self.mesh.w
            u[1:] = u[1:] * w[1:] ** (-self.weight_exponent)
            u[0] = np.nan
        return u

    def with_values(self, values: np.ndarray) -> "WeightedGridFunction":
        return replace(self, values=values, endpoint_extrapolated=False)

    # Arithmetic on a shared mesh; mixed weights meet at the larger exponent

    def _aligned(self, other: "WeightedGridFunction"):
        self.mesh.require_same(other.mesh)
        mu = max(self.weight_exponent, other.weight_exponent)
        return reweight(self, mu), reweight(other, mu), mu

    def __add__(self, other):
        if isinstance(other, WeightedGridFunction):
            lhs, rhs, mu = self._aligned(other)
            return WeightedGridFunction(
                self.mesh, mu, lhs.values + rhs.values,
                lhs.endpoint_extrapolated or rhs.endpoint_extrapolated,
            )
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, WeightedGridFunction):
            return self + (-1.0) * other
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, np.floating)):
            return WeightedGridFunction(
                self.mesh, self.weight_exponent, float(scalar) * self.values,
                self.endpoint_extrapolated,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self

    def __len__(self) -> int:
        return len(self.values)


def extrapolate_start(w: np.ndarray, values: np.ndarray) -> float:
    """Linear extrapolation in w from nodes 1 and 2 back to w_0 = 0."""
    slope = (values[2] - values[1]) / (w[2] - w[1])
    return float(values[1] - slope * (w[1] - w[0]))


def reweight(f: WeightedGridFunction, mu_new: float) -> WeightedGridFunction:
    """Change the weight exponent of f.

    Interior nodes are rescaled exactly by w^{μ_new - μ}. At t_0 raising the
    exponent gives 0 (assuming w^{μ}u bounded), while lowering it extrapolates
    linearly from t_1, t_2 and sets endpoint_extrapolated.
    """
    mu = f.weight_exponent
    if mu_new == mu:
        return f
    w = f.mesh.w
    values = np.empty_like(f.values)
    values[1:] = f.values[1:] * w[1:] ** (mu_new - mu)
    if mu_new > mu:
        values[0] = 0.0
        return WeightedGridFunction(f.mesh, mu_new, values, f.endpoint_extrapolated)
    values[0] = extrapolate_start(w, values)
    return WeightedGridFunction(f.mesh, mu_new, values, True)


def weighted_sup_norm(
    f: WeightedGridFunction,
    skip_start: int = 0,
    skip_end: int = 0,
) -> float:
    """max_j |v_j|, the discrete norm of the weighted space.

    Args:
        f: Grid function
        skip_start: Leading nodes excluded from the maximum
        skip_end: Trailing nodes excluded from the maximum
    """
    if len(f.values) < 2:
        raise MeshError("Norm needs at least two nodes")
    stop = len(f.values) - skip_end
    window = f.values[skip_start:stop]
    if window.size == 0:
        return 0.0
    return float(np.max(np.abs(window)))
