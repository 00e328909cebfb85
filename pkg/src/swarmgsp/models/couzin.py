"""Zonal-interaction swarm model in 3-D.

Each agent reacts to visible neighbors in three concentric zones: repulsion
(always wins), heading alignment, and attraction. The desired direction is
perturbed by rotational noise and the heading turns toward it under a
per-step turn-rate cap; agents then advance at constant individual speed.
All agents update synchronously from the pre-step state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .. import kernels
from .state import SwarmState

_EPS = 1e-12


@dataclass(frozen=True)
class CouzinParams:
    """Parameters of one zonal-model agent.

    Radii satisfy ``r_repulsion <= r_orientation <= r_attraction``; angles
    are radians, rates are per second.
    """

    r_repulsion: float
    r_orientation: float
    r_attraction: float
    perception_angle: float
    max_turn_rate: float
    speed: float
    noise_sd: float
    dt: float

    def __post_init__(self):
        if not (0.0 < self.r_repulsion <= self.r_orientation <= self.r_attraction):
            raise ValueError(
                "zone radii must satisfy 0 < r_repulsion <= r_orientation <= r_attraction"
            )
        if not (0.0 < self.perception_angle <= 2.0 * np.pi):
            raise ValueError("perception_angle must lie in (0, 2*pi]")
        if self.max_turn_rate <= 0 or self.speed <= 0 or self.dt <= 0:
            raise ValueError("max_turn_rate, speed, and dt must be positive")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be nonnegative")


@dataclass(frozen=True)
class PackedCouzinParams:
    """Per-agent parameter arrays for the step kernels (one shared dt)."""

    rr2: np.ndarray
    ro2: np.ndarray
    ra2: np.ndarray
    cos_half: np.ndarray
    max_turn: np.ndarray
    speed: np.ndarray
    noise_sd: np.ndarray
    dt: float

    @property
    def n_agents(self) -> int:
        return self.rr2.shape[0]


def pack_couzin_params(params: Sequence[CouzinParams]) -> PackedCouzinParams:
    """Convert a per-agent parameter list into kernel-ready arrays."""
    if len(params) == 0:
        raise ValueError("empty parameter list")
    dts = {p.dt for p in params}
    if len(dts) != 1:
        raise ValueError("all agents must share one dt for a synchronous step")
    return PackedCouzinParams(
        rr2=np.array([p.r_repulsion**2 for p in params]),
        ro2=np.array([p.r_orientation**2 for p in params]),
        ra2=np.array([p.r_attraction**2 for p in params]),
        cos_half=np.array([np.cos(p.perception_angle / 2.0) for p in params]),
        max_turn=np.array([p.max_turn_rate for p in params]),
        speed=np.array([p.speed for p in params]),
        noise_sd=np.array([p.noise_sd for p in params]),
        dt=dts.pop(),
    )


def _fallback_axes(vectors: np.ndarray) -> np.ndarray:
    """A deterministic unit vector orthogonal to each row (rows are unit)."""
    n = vectors.shape[0]
    pick = np.argmin(np.abs(vectors), axis=1)
    basis = np.zeros_like(vectors)
    basis[np.arange(n), pick] = 1.0
    axes = np.cross(vectors, basis)
    return axes / np.linalg.norm(axes, axis=1)[:, None]


def _perturb_directions(dirs: np.ndarray, noise_sd: np.ndarray, rng) -> np.ndarray:
    """Rotate each unit row by |N(0, sd)| about a random orthogonal axis."""
    n = dirs.shape[0]
    angles = np.abs(rng.normal(0.0, 1.0, size=n)) * noise_sd
    raw = rng.normal(size=(n, 3))
    raw -= dirs * np.einsum("ij,ij->i", raw, dirs)[:, None]
    norms = np.linalg.norm(raw, axis=1)
    bad = norms <= _EPS
    if np.any(bad):
        raw[bad] = _fallback_axes(dirs[bad])
        norms[bad] = 1.0
    axes = raw / norms[:, None]
    c = np.cos(angles)[:, None]
    s = np.sin(angles)[:, None]
    return dirs * c + np.cross(axes, dirs) * s


def _rotate_toward(headings: np.ndarray, targets: np.ndarray, max_angle: np.ndarray) -> np.ndarray:
    """Rotate each unit heading toward the unit target, capped per agent."""
    cos_gap = np.clip(np.einsum("ij,ij->i", headings, targets), -1.0, 1.0)
    gap = np.arccos(cos_gap)
    within = gap <= max_angle

    axes = np.cross(headings, targets)
    norms = np.linalg.norm(axes, axis=1)
    degenerate = norms <= _EPS  # parallel or antiparallel pairs
    if np.any(degenerate):
        axes[degenerate] = _fallback_axes(headings[degenerate])
        norms[degenerate] = 1.0
    axes /= norms[:, None]

    c = np.cos(max_angle)[:, None]
    s = np.sin(max_angle)[:, None]
    rotated = headings * c + np.cross(axes, headings) * s
    out = np.where(within[:, None], targets, rotated)
    return out / np.linalg.norm(out, axis=1)[:, None]


def couzin_step(state: SwarmState,
                params: Union[Sequence[CouzinParams], PackedCouzinParams],
                rng) -> SwarmState:
    """Advance a zonal-model state by one synchronous time step."""
    if state.headings is None or state.n_dims != 3:
        raise ValueError("couzin_step needs a 3-D state with headings")
    packed = params if isinstance(params, PackedCouzinParams) else pack_couzin_params(params)
    if packed.n_agents != state.n_agents:
        raise ValueError("parameter list length must equal the agent count")

    positions = np.ascontiguousarray(state.positions)
    headings = np.ascontiguousarray(state.headings)
    desired = kernels.couzin_desired(
        positions, headings, packed.rr2, packed.ro2, packed.ra2, packed.cos_half
    )
    norms = np.linalg.norm(desired, axis=1)
    ok = norms > _EPS
    unit_desired = np.where(ok[:, None], desired / np.maximum(norms, _EPS)[:, None], headings)

    noisy = _perturb_directions(unit_desired, packed.noise_sd, rng)
    new_headings = _rotate_toward(headings, noisy, packed.max_turn * packed.dt)
    new_positions = positions + packed.speed[:, None] * packed.dt * new_headings
    return SwarmState(
        positions=new_positions,
        headings=new_headings,
        velocities=packed.speed[:, None] * new_headings,
        time_step_index=state.time_step_index + 1,
    )
