"""Order parameters and state diagnostics used to classify collective states."""

from __future__ import annotations

import numpy as np

from .state import SwarmState


def order_metrics(state: SwarmState) -> tuple[float, float]:
    """Group polarization and angular momentum of a heading-carrying state.

    Polarization is the norm of the mean heading. Angular momentum is the
    norm of the mean cross product between the unit centroid-to-agent
    vector and the heading; 1 for a perfectly rotating ring, ~0 for
    disordered or fully aligned groups. Agents sitting exactly on the
    centroid contribute nothing to the angular momentum.
    """
    if state.headings is None:
        raise ValueError("order_metrics needs a state with headings")
    headings = state.headings
    n = state.n_agents
    polarization = float(np.linalg.norm(headings.sum(axis=0)) / n)

    offsets = state.positions - state.positions.mean(axis=0)
    norms = np.linalg.norm(offsets, axis=1)
    safe = norms > 0.0
    radial = np.zeros_like(offsets)
    radial[safe] = offsets[safe] / norms[safe, None]
    angular = float(np.linalg.norm(np.cross(radial, headings).sum(axis=0)) / n)
    return polarization, angular


def circular_variance(phases: np.ndarray) -> float:
    """1 - |mean phase vector|: 0 for locked phases, ~1 for spread phases."""
    resultant = np.abs(np.exp(1j * np.asarray(phases)).mean())
    return float(1.0 - resultant)


def annulus_ratio(positions: np.ndarray) -> float:
    """Ratio of the 10th to 90th percentile distance from the centroid.

    Near 0 for a filled disk or blob, closer to 1 for a thin ring.
    """
    offsets = positions - positions.mean(axis=0)
    radii = np.linalg.norm(offsets, axis=1)
    lo, hi = np.percentile(radii, [10.0, 90.0])
    if hi == 0.0:
        return 0.0
    return float(lo / hi)
