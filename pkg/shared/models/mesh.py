"""Graded time meshes resolving the w^{γ-1} endpoint singularity."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from shared.errors import InvalidGrading, MeshError, MeshMismatch, NonMonotoneKernel
from shared.models.kernel import PsiKernel

# Smallest N accepted
MIN_NODES = 2
# Number of nodes spot-checked against the kernel's derivative
DERIVATIVE_SAMPLES = 17


def _same_kernel(k1: PsiKernel, k2: PsiKernel) -> bool:
    return k1 is k2 or (k1.label == k2.label and k1.a == k2.a and k1.b == k2.b)


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class GradedMesh:
    """Strictly increasing time grid with cached ψ values.

    Meshes compare by identity; use `matches` for a value comparison.

    Attributes:
        kernel: Kernel the mesh was built for
        nodes: t_0 < t_1 < ... < t_N
        grading_exponent: r >= 1 (1 for uniform or externally supplied nodes)
        psi_nodes: x_j = ψ(t_j)
    """
    kernel: PsiKernel
    nodes: np.ndarray
    grading_exponent: float
    psi_nodes: np.ndarray

    @property
    def N(self) -> int:
        """Number of intervals (nodes - 1)."""
        return len(self.nodes) - 1

    @property
    def w(self) -> np.ndarray:
        """w_j = ψ(t_j) - ψ(a), measured from the kernel's left endpoint."""
        return self.psi_nodes - self.kernel.psi_a

    @property
    def starts_at_origin(self) -> bool:
        return self.nodes[0] == self.kernel.a

    def matches(self, other: "GradedMesh") -> bool:
        if other is self:
            return True
        return (
            _same_kernel(other.kernel, self.kernel)
            and len(other.nodes) == len(self.nodes)
            and bool(np.array_equal(other.nodes, self.nodes))
        )

    def require_same(self, other: "GradedMesh") -> None:
        """Raise MeshMismatch unless other matches this mesh."""
        if not self.matches(other):
            raise MeshMismatch(
                "Grid functions live on different meshes",
                context={"nodes": len(self.nodes), "other_nodes": len(other.nodes)},
            )

    @classmethod
    def from_nodes(
        cls,
        kernel: PsiKernel,
        nodes: Sequence[float] | np.ndarray,
        grading_exponent: float = 1.0,
    ) -> "GradedMesh":
        """Build a mesh from explicit nodes inside [a, b].

        Raises:
            MeshError: If nodes are not strictly increasing or leave [a, b]
            NonMonotoneKernel: If ψ fails to increase on the nodes
        """
        t = np.asarray(nodes, dtype=float)
        if t.ndim != 1 or len(t) < 2:
            raise MeshError("A mesh needs at least two nodes", {"nodes": int(t.size)})
        if np.any(np.diff(t) <= 0.0):
            raise MeshError("Mesh nodes must be strictly increasing")
        if t[0] < kernel.a or t[-1] > kernel.b:
            raise MeshError(
                "Mesh nodes leave the kernel domain",
                context={"first": float(t[0]), "last": float(t[-1]), "a": kernel.a, "b": kernel.b},
            )

        psi = np.asarray(kernel.eval(t), dtype=float)
        deriv = np.asarray(kernel.deriv(t), dtype=float)
        if np.any(np.diff(psi) <= 0.0) or np.any(deriv <= 0.0):
            raise NonMonotoneKernel(
                f"Kernel '{kernel.label}' is not strictly increasing on the mesh",
                context={"label": kernel.label},
            )

        picks = np.unique(np.linspace(0, len(t) - 1, min(DERIVATIVE_SAMPLES, len(t))).astype(int))
        kernel.check_derivative(t[picks])

        return cls(
            kernel=kernel,
            nodes=_readonly(t),
            grading_exponent=float(grading_exponent),
            psi_nodes=_readonly(psi),
        )

    @classmethod
    def concatenate(cls, meshes: Sequence["GradedMesh"]) -> "GradedMesh":
        """Join consecutive meshes sharing endpoints into one global mesh."""
        if not meshes:
            raise MeshError("Nothing to concatenate")
        kernel = meshes[0].kernel
        parts = [meshes[0].nodes]
        for prev, mesh in zip(meshes, meshes[1:]):
            if not _same_kernel(mesh.kernel, kernel) or mesh.nodes[0] != prev.nodes[-1]:
                raise MeshMismatch(
                    "Meshes must share a kernel and meet at their endpoints",
                    context={"left_end": float(prev.nodes[-1]), "right_start": float(mesh.nodes[0])},
                )
            parts.append(mesh.nodes[1:])
        return cls.from_nodes(
            kernel,
            np.concatenate(parts),
            grading_exponent=meshes[0].grading_exponent,
        )


def default_grading(gamma: float) -> float:
    """r = max(1, 2/γ)."""
    return max(1.0, 2.0 / gamma)


def graded_nodes(start: float, end: float, N: int, r: float) -> np.ndarray:
    """t_j = start + (end - start)(j/N)^r, with both endpoints exact."""
    nodes = start + (end - start) * (np.arange(N + 1) / N) ** r
    nodes[0] = start
    nodes[-1] = end
    return nodes


def build_graded_mesh(kernel: PsiKernel, N: int, r: float) -> GradedMesh:
    """Graded mesh t_j = a + (b - a)(j/N)^r on the kernel's domain.

    Args:
        kernel: Kernel supplying [a, b]
        N: Number of intervals, at least 2
        r: Grading exponent, at least 1

    Raises:
        InvalidGrading: If r < 1 or N < 2
        NonMonotoneKernel: If ψ(t_{j+1}) <= ψ(t_j) anywhere
    """
    if not r >= 1.0:
        raise InvalidGrading("Grading exponent must be at least 1", {"r": r})
    if N < MIN_NODES:
        raise InvalidGrading(f"Mesh needs N >= {MIN_NODES}", {"N": N})
    return GradedMesh.from_nodes(kernel, graded_nodes(kernel.a, kernel.b, N, r), r)
