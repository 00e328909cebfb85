"""Bridge from swarm states to graphs and graph signals.

The instantaneous graph is complete with Gaussian-kernel weights whose
bandwidth is the mean squared inter-agent distance, making the construction
invariant to rigid motions and to uniform rescaling of the position cloud.
"""

from __future__ import annotations

import numpy as np

from .errors import DegeneratePositions, ZeroVelocity
from .models.state import SwarmState
from .spectral import GraphSignal, WeightedGraph

SIGNAL_TAGS = {
    "adjusted_position": "r",
    "normalized_velocity": "u",
    "phase_complex": "h",
}


def build_swarm_graph(positions: np.ndarray) -> WeightedGraph:
    """Gaussian-kernel adjacency over agent positions.

    Weight(j, k) = exp(-||x_j - x_k||^2 / s2) with s2 the mean squared
    distance over ordered pairs j != k; the diagonal is zero.
    """
    positions = np.asarray(positions, dtype=float)
    n = positions.shape[0]
    if n < 2:
        raise ValueError("need at least 2 agents to build a graph")
    if not np.all(np.isfinite(positions)):
        raise ValueError("positions must be finite")
    diff = positions[None, :, :] - positions[:, None, :]
    sq_dists = np.einsum("ijk,ijk->ij", diff, diff)
    bandwidth_sq = sq_dists.sum() / (n * (n - 1))
    if bandwidth_sq <= 0.0:
        raise DegeneratePositions("all positions coincide; kernel bandwidth is zero")
    adjacency = np.exp(-sq_dists / bandwidth_sq)
    np.fill_diagonal(adjacency, 0.0)
    return WeightedGraph(adjacency=adjacency, bandwidth_sq=float(bandwidth_sq))


def extract_signal(state: SwarmState, kind: str) -> GraphSignal:
    """Realize one of the three per-agent graph signals from a state.

    ``adjusted_position``: positions with the swarm centroid removed.
    ``normalized_velocity``: velocity divided by its squared norm. This
    scales constant-speed agents by the inverse speed rather than producing
    unit vectors; for a shared speed the two differ only by a global
    constant, which no rank-based detector can see.
    ``phase_complex``: exp(i * phase), one complex column.
    """
    if kind == "adjusted_position":
        values = state.positions - state.positions.mean(axis=0)
        return GraphSignal(values=values, kind=kind)
    if kind == "normalized_velocity":
        if state.velocities is None:
            raise ValueError("state carries no velocities; step the model first")
        sq_norms = np.einsum("ij,ij->i", state.velocities, state.velocities)
        if np.any(sq_norms == 0.0):
            raise ZeroVelocity("an agent has zero velocity")
        return GraphSignal(values=state.velocities / sq_norms[:, None], kind=kind)
    if kind == "phase_complex":
        if state.phases is None:
            raise ValueError("state carries no phases")
        return GraphSignal(values=np.exp(1j * state.phases).reshape(-1, 1), kind=kind)
    raise ValueError(f"unknown signal kind {kind!r}")
