"""Time-stepped swarm models and their order-parameter diagnostics."""

from .couzin import CouzinParams, PackedCouzinParams, couzin_step, pack_couzin_params
from .metrics import annulus_ratio, circular_variance, order_metrics
from .state import MODEL_KINDS, SwarmState, init_swarm
from .swarmalator import (
    PackedSwarmalatorParams,
    SwarmalatorParams,
    pack_swarmalator_params,
    swarmalator_step,
)

__all__ = [
    "MODEL_KINDS",
    "SwarmState",
    "init_swarm",
    "CouzinParams",
    "PackedCouzinParams",
    "couzin_step",
    "pack_couzin_params",
    "SwarmalatorParams",
    "PackedSwarmalatorParams",
    "swarmalator_step",
    "pack_swarmalator_params",
    "order_metrics",
    "circular_variance",
    "annulus_ratio",
]
