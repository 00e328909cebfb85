"""Graph spectral machinery: normalized Laplacian, GFT, and diagonal filters.

All operations are pure functions of their arguments. Arrays held by the
container types are treated as immutable after construction so values can be
shared freely across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    IndexOutOfRange,
    ZeroDegree,
)

SIGNAL_KINDS = ("adjusted_position", "normalized_velocity", "phase_complex", "raw")


@dataclass(frozen=True)
class WeightedGraph:
    """Symmetric nonnegative adjacency with zero diagonal.

    ``bandwidth_sq`` is the squared kernel bandwidth used to build the
    adjacency (mean squared inter-agent distance).
    """

    adjacency: np.ndarray
    bandwidth_sq: float

    def __post_init__(self):
        a = self.adjacency
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"adjacency must be square, got {a.shape}")
        if self.bandwidth_sq <= 0:
            raise ValueError("bandwidth_sq must be positive")

    @property
    def n_vertices(self) -> int:
        return self.adjacency.shape[0]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass(frozen=True)
class SpectralBasis:
    """Eigendecomposition of a normalized Laplacian.

    ``eigenvalues`` ascend; ``eigenvectors`` holds the matching orthonormal
    eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        if self.eigenvectors.ndim != 2:
            raise DimensionMismatch("eigenvectors must be 2-D")
        n = self.eigenvectors.shape[0]
        if self.eigenvectors.shape != (n, n) or self.eigenvalues.shape != (n,):
            raise DimensionMismatch(
                f"inconsistent basis shapes {self.eigenvalues.shape}, "
                f"{self.eigenvectors.shape}"
            )

    @property
    def n_vertices(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class GraphSignal:
    """One value row per vertex; ``values`` is always 2-D (N x m).

    Kinds: ``adjusted_position`` (mean-removed positions),
    ``normalized_velocity`` (velocity scaled by inverse squared speed),
    ``phase_complex`` (unit-modulus phase exponentials, m = 1), ``raw``.
    """

    values: np.ndarray
    kind: str = "raw"

    def __post_init__(self):
        if self.values.ndim == 1:
            object.__setattr__(self, "values", self.values.reshape(-1, 1))
        if self.values.ndim != 2:
            raise DimensionMismatch(f"signal values must be N x m, got {self.values.shape}")
        if self.kind not in SIGNAL_KINDS:
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.kind == "phase_complex":
            mods = np.abs(self.values)
            if not np.allclose(mods, 1.0, rtol=0.0, atol=1e-12):
                raise ValueError("phase_complex entries must have unit modulus")

    @property
    def n_vertices(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class FilterSpec:
    """Diagonal graph filter: an indicator over pass indices, or the
    eigenvalue ramp used for local-smoothness scoring.

    Pass indices are 1-based spectral indices (index 1 = zero eigenvalue).
    """

    variant: str
    pass_indices: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.variant not in ("indicator", "lgs"):
            raise ValueError(f"unknown filter variant {self.variant!r}")
        object.__setattr__(self, "pass_indices", frozenset(self.pass_indices))
        if self.variant == "indicator":
            if not self.pass_indices:
                raise ValueError("indicator filter needs a nonempty pass set")
            if min(self.pass_indices) < 1:
                raise IndexOutOfRange("pass indices are 1-based")


def normalized_laplacian(graph: WeightedGraph) -> np.ndarray:
    """Return D^{-1/2} (D - A) D^{-1/2} for the graph's adjacency.

    The diagonal is exactly 1 (adjacency has zero diagonal) and the
    off-diagonal (j, k) entry is -A[j,k] / sqrt(deg_j * deg_k).
    """
    deg = graph.degrees()
    if np.any(deg <= 0.0):
        bad = int(np.argmin(deg))
        raise ZeroDegree(f"vertex {bad} has zero degree")
    inv_sqrt = 1.0 / np.sqrt(deg)
    lap = -graph.adjacency * inv_sqrt[:, None] * inv_sqrt[None, :]
    np.fill_diagonal(lap, 1.0)
    return lap


def eigendecompose(laplacian: np.ndarray) -> SpectralBasis:
    """Eigendecompose a symmetric matrix into an ascending spectral basis.

    Eigenvector signs are fixed deterministically: the entry of largest
    magnitude in each column (lowest index on ties) is made positive, so
    identical inputs always produce identical bases.
    """
    if laplacian.ndim != 2 or laplacian.shape[0] != laplacian.shape[1]:
        raise DimensionMismatch(f"expected square matrix, got {laplacian.shape}")
    if not np.allclose(laplacian, laplacian.T, rtol=0.0, atol=1e-10):
        raise ValueError("matrix is not symmetric within 1e-10")
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(laplacian)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    # np.argmax takes the first maximum, which breaks magnitude ties by
    # lowest index as required for a reproducible sign convention.
    anchor = np.argmax(np.abs(eigenvectors), axis=0)
    signs = np.sign(eigenvectors[anchor, np.arange(eigenvectors.shape[1])])
    signs[signs == 0] = 1.0
    return SpectralBasis(eigenvalues=eigenvalues, eigenvectors=eigenvectors * signs)


def gft(basis: SpectralBasis, signal: GraphSignal) -> np.ndarray:
    """Project a signal onto the basis: spectrum = U^T f (column-wise).

    The basis is real, so complex signals transform componentwise in the
    real and imaginary parts; numpy's complex matmul does exactly that.
    """
    if signal.n_vertices != basis.n_vertices:
        raise DimensionMismatch(
            f"signal has {signal.n_vertices} rows, basis expects {basis.n_vertices}"
        )
    return basis.eigenvectors.T @ signal.values


def igft(basis: SpectralBasis, spectrum: np.ndarray) -> GraphSignal:
    """Invert the GFT: f = U fhat."""
    spectrum = np.asarray(spectrum)
    if spectrum.ndim == 1:
        spectrum = spectrum.reshape(-1, 1)
    if spectrum.shape[0] != basis.n_vertices:
        raise DimensionMismatch(
            f"spectrum has {spectrum.shape[0]} rows, basis expects {basis.n_vertices}"
        )
    return GraphSignal(values=basis.eigenvectors @ spectrum, kind="raw")


def gft_power(spectrum: np.ndarray) -> np.ndarray:
    """Per-index power: squared magnitude summed over signal dimensions.

    Summing the result recovers the squared Frobenius norm of the signal
    (Parseval).
    """
    spectrum = np.asarray(spectrum)
    if spectrum.ndim == 1:
        spectrum = spectrum.reshape(-1, 1)
    return (np.abs(spectrum) ** 2).sum(axis=1)


def _pass_index_array(spec: FilterSpec, n: int) -> np.ndarray:
    indices = np.array(sorted(spec.pass_indices), dtype=np.intp)
    if indices[-1] > n:
        raise IndexOutOfRange(f"pass index {indices[-1]} exceeds graph size {n}")
    return indices - 1  # to 0-based


def apply_filter(basis: SpectralBasis, spec: FilterSpec, signal: GraphSignal) -> GraphSignal:
    """Apply a diagonal-response filter: g = U H U^T f.

    ``indicator`` keeps the pass-band coefficients; ``lgs`` multiplies each
    coefficient by its eigenvalue (algebraically identical to applying the
    normalized Laplacian to the signal directly).
    """
    spectrum = gft(basis, signal)
    if spec.variant == "indicator":
        keep = _pass_index_array(spec, basis.n_vertices)
        u_sub = basis.eigenvectors[:, keep]
        filtered = u_sub @ spectrum[keep, :]
    else:
        filtered = basis.eigenvectors @ (basis.eigenvalues[:, None] * spectrum)
    return GraphSignal(values=filtered, kind="raw")
