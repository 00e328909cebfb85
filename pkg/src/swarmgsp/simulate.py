"""Shared simulation driving: steppers, trajectories, and state diagnostics."""

from __future__ import annotations

from typing import Callable, Iterator, Union

import numpy as np

from .models.couzin import PackedCouzinParams, couzin_step
from .models.metrics import annulus_ratio, circular_variance, order_metrics
from .models.state import SwarmState
from .models.swarmalator import PackedSwarmalatorParams, swarmalator_step

Stepper = Callable[[SwarmState], SwarmState]


def make_stepper(packed: Union[PackedCouzinParams, PackedSwarmalatorParams],
                 rng=None) -> Stepper:
    """Bind packed parameters (and the noise stream, for the zonal model)
    into a state -> state map."""
    if isinstance(packed, PackedCouzinParams):
        if rng is None:
            raise ValueError("the zonal model needs an rng for its noise")
        return lambda state: couzin_step(state, packed, rng)
    return lambda state: swarmalator_step(state, packed)


def run_steps(state: SwarmState, stepper: Stepper, n_steps: int) -> SwarmState:
    for _ in range(n_steps):
        state = stepper(state)
    return state


def iter_steps(state: SwarmState, stepper: Stepper, n_steps: int) -> Iterator[SwarmState]:
    """Yield the state after each of ``n_steps`` steps (initial state excluded)."""
    for _ in range(n_steps):
        state = stepper(state)
        yield state


def state_metrics(state: SwarmState) -> dict:
    """Classification metrics appropriate to the state's model family."""
    if state.headings is not None:
        polarization, angular_momentum = order_metrics(state)
        return {"polarization": polarization, "angular_momentum": angular_momentum}
    if state.phases is not None:
        return {
            "circular_variance": circular_variance(state.phases),
            "annulus_ratio": annulus_ratio(state.positions),
        }
    raise ValueError("state carries neither headings nor phases")


def check_thresholds(metrics: dict, thresholds: dict) -> bool:
    """Evaluate min_*/max_* threshold keys against a metric dict."""
    for key, bound in thresholds.items():
        if key.startswith("min_"):
            if metrics[key[4:]] <= bound:
                return False
        elif key.startswith("max_"):
            if metrics[key[4:]] >= bound:
                return False
        else:
            raise ValueError(f"threshold key {key!r} must start with min_ or max_")
    return True
