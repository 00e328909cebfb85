"""Swarm state container and seeded initialization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

MODEL_KINDS = ("couzin", "swarmalator")


@dataclass(frozen=True)
class SwarmState:
    """Positions plus per-model motion variables at one time instant.

    Zonal-model (couzin) states carry unit ``headings`` in 3-D; swarmalator
    states carry ``phases`` in [0, 2pi) in 2-D. ``velocities`` holds the
    instantaneous velocity produced by the last step (None before the first
    step).
    """

    positions: np.ndarray
    headings: Optional[np.ndarray] = None
    velocities: Optional[np.ndarray] = None
    phases: Optional[np.ndarray] = None
    time_step_index: int = 0

    @property
    def n_agents(self) -> int:
        return self.positions.shape[0]

    @property
    def n_dims(self) -> int:
        return self.positions.shape[1]


def init_swarm(model_kind: str, n_agents: int, rng_seed, spatial_extent: float) -> SwarmState:
    """Draw a uniformly random initial state, deterministic in the seed.

    Positions are uniform in a cube (couzin, 3-D) or square (swarmalator,
    2-D) with side ``spatial_extent`` centered on the origin; couzin headings
    are uniform on the unit sphere; swarmalator phases are uniform in
    [0, 2pi).
    """
    if model_kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {model_kind!r}")
    if n_agents < 2:
        raise ValueError("need at least 2 agents")
    if spatial_extent <= 0:
        raise ValueError("spatial_extent must be positive")
    rng = np.random.default_rng(rng_seed)
    half = spatial_extent / 2.0
    if model_kind == "couzin":
        positions = rng.uniform(-half, half, size=(n_agents, 3))
        raw = rng.normal(size=(n_agents, 3))
        norms = np.linalg.norm(raw, axis=1)
        norms[norms == 0.0] = 1.0
        headings = raw / norms[:, None]
        return SwarmState(positions=positions, headings=headings)
    positions = rng.uniform(-half, half, size=(n_agents, 2))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=n_agents)
    return SwarmState(positions=positions, phases=phases)
