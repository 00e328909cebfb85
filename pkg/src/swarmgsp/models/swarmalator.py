"""Phase-coupled swarm model ("swarmalator") in 2-D.

Spatial attraction is modulated by phase similarity while phases obey
distance-weighted coupling, so position and internal phase dynamics feed
each other. Integration is forward Euler with a shared step size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .. import kernels
from ..errors import NumericalBlowup
from .state import SwarmState

_BLOWUP_LIMIT = 1e6


@dataclass(frozen=True)
class SwarmalatorParams:
    """Parameters of one phase-coupled agent.

    ``attraction`` is the baseline spatial pull, ``repulsion`` the
    short-range inverse-distance push (must be positive),
    ``phase_attraction`` scales how much phase similarity boosts the pull,
    and ``sync_coupling`` the distance-weighted phase coupling.
    """

    attraction: float
    repulsion: float
    phase_attraction: float
    sync_coupling: float
    natural_freq: float = 0.0
    dt: float = 0.1

    def __post_init__(self):
        if self.repulsion <= 0:
            raise ValueError("repulsion must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")


@dataclass(frozen=True)
class PackedSwarmalatorParams:
    """Per-agent parameter arrays for the step kernel (one shared dt)."""

    attraction: np.ndarray
    repulsion: np.ndarray
    phase_attraction: np.ndarray
    sync_coupling: np.ndarray
    omega: np.ndarray
    dt: float

    @property
    def n_agents(self) -> int:
        return self.attraction.shape[0]


def pack_swarmalator_params(params: Sequence[SwarmalatorParams]) -> PackedSwarmalatorParams:
    if len(params) == 0:
        raise ValueError("empty parameter list")
    dts = {p.dt for p in params}
    if len(dts) != 1:
        raise ValueError("all agents must share one dt for a synchronous step")
    return PackedSwarmalatorParams(
        attraction=np.array([p.attraction for p in params]),
        repulsion=np.array([p.repulsion for p in params]),
        phase_attraction=np.array([p.phase_attraction for p in params]),
        sync_coupling=np.array([p.sync_coupling for p in params]),
        omega=np.array([p.natural_freq for p in params]),
        dt=dts.pop(),
    )


def swarmalator_step(state: SwarmState,
                     params: Union[Sequence[SwarmalatorParams], PackedSwarmalatorParams],
                     ) -> SwarmState:
    """Advance a phase-coupled swarm state by one forward-Euler step."""
    if state.phases is None or state.n_dims != 2:
        raise ValueError("swarmalator_step needs a 2-D state with phases")
    packed = (params if isinstance(params, PackedSwarmalatorParams)
              else pack_swarmalator_params(params))
    if packed.n_agents != state.n_agents:
        raise ValueError("parameter list length must equal the agent count")

    positions = np.ascontiguousarray(state.positions)
    phases = np.ascontiguousarray(state.phases)
    dxdt, dthetadt = kernels.swarmalator_derivs(
        positions, phases, packed.attraction, packed.repulsion,
        packed.phase_attraction, packed.sync_coupling, packed.omega,
    )
    new_positions = positions + packed.dt * dxdt
    if np.max(np.abs(new_positions)) > _BLOWUP_LIMIT:
        raise NumericalBlowup(
            f"position magnitude exceeded {_BLOWUP_LIMIT:g}; dt is likely unstable"
        )
    new_phases = np.mod(phases + packed.dt * dthetadt, 2.0 * np.pi)
    new_phases[new_phases >= 2.0 * np.pi] = 0.0  # guard the half-open interval
    return SwarmState(
        positions=new_positions,
        velocities=dxdt,
        phases=new_phases,
        time_step_index=state.time_step_index + 1,
    )
