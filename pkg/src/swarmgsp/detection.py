"""Per-agent anomaly statistics from graph-filtered signal energy.

Two detectors share one statistic shape: filter the graph signal, then score
each agent by the squared norm of its filtered row. The out-of-band-power
(OOBP) detector uses a case-specific indicator filter over spectral indices
the nominal swarm leaves empty; the local-graph-smoothness (LGS) detector
weights coefficients by their eigenvalues, scoring disagreement with the
graph neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import EmptyInput, UnknownCase
from .models.couzin import CouzinParams
from .models.swarmalator import SwarmalatorParams
from .spectral import FilterSpec, GraphSignal, SpectralBasis, apply_filter

METHODS = ("oobp", "lgs")

# Case table: nominal state, anomaly, and signal per scenario id.
CASE_MODEL = {1: "couzin", 2: "couzin", 3: "couzin", 4: "couzin", 5: "swarmalator"}
CASE_SIGNAL = {
    1: "adjusted_position",
    2: "adjusted_position",
    3: "normalized_velocity",
    4: "normalized_velocity",
    5: "phase_complex",
}
# Low-smoothness anomalies (case 4) rank low under LGS, so its ordering flips.
CASE_LGS_DIRECTION = {1: 1, 2: 1, 3: 1, 4: -1, 5: 1}


def _oobp_pass_set(case_id: int, n: int) -> frozenset:
    if case_id == 1:
        return frozenset(range(5, n + 1))
    if case_id in (2, 3):
        return frozenset(range(4, n + 1))
    if case_id == 4:
        return frozenset(range(1, 7))
    if case_id == 5:
        return frozenset({1}) | frozenset(range(4, n + 1))
    raise UnknownCase(f"case {case_id} is not one of 1..5")


def case_filter_spec(case_id: int, method: str, n: int) -> FilterSpec:
    """Default filter for a scenario: the published per-case indicator band
    for OOBP, the eigenvalue ramp for LGS (case-independent)."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if case_id not in CASE_MODEL:
        raise UnknownCase(f"case {case_id} is not one of 1..5")
    if method == "lgs":
        return FilterSpec(variant="lgs")
    if n < 6:
        raise ValueError("case filters need at least 6 vertices")
    return FilterSpec(variant="indicator", pass_indices=_oobp_pass_set(case_id, n))


@dataclass(frozen=True)
class CaseSpec:
    """A bundled detection scenario: model, parameters, signal, and filters."""

    case_id: int
    model_kind: str
    nominal_params: Union[CouzinParams, SwarmalatorParams]
    anomaly_params: Union[CouzinParams, SwarmalatorParams]
    signal_kind: str
    oobp_filter: FilterSpec
    lgs_direction: int
    spatial_extent: float

    def __post_init__(self):
        if self.case_id not in CASE_MODEL:
            raise UnknownCase(f"case {self.case_id} is not one of 1..5")
        if self.model_kind != CASE_MODEL[self.case_id]:
            raise ValueError(
                f"case {self.case_id} runs on {CASE_MODEL[self.case_id]}, "
                f"not {self.model_kind}"
            )
        if self.signal_kind != CASE_SIGNAL[self.case_id]:
            raise ValueError(
                f"case {self.case_id} uses signal {CASE_SIGNAL[self.case_id]!r}"
            )
        if self.lgs_direction != CASE_LGS_DIRECTION[self.case_id]:
            raise ValueError(
                f"case {self.case_id} orients LGS with "
                f"{CASE_LGS_DIRECTION[self.case_id]:+d}"
            )

    def filter_for(self, method: str) -> FilterSpec:
        if method == "oobp":
            return self.oobp_filter
        if method == "lgs":
            return FilterSpec(variant="lgs")
        raise ValueError(f"unknown method {method!r}")

    def direction_for(self, method: str) -> int:
        return self.lgs_direction if method == "lgs" else 1


@dataclass(frozen=True)
class AgentScores:
    """Snapshot-summed per-agent energies for one detector.

    ``accumulated`` stays nonnegative; ``direction`` orients the detector
    ordering downstream (scores are never negated in storage).
    """

    accumulated: np.ndarray
    snapshots_used: int
    method: str
    direction: int = 1

    def ranking_scores(self) -> np.ndarray:
        """Scores oriented so larger always means more anomalous."""
        return self.direction * self.accumulated


def per_agent_statistic(basis: SpectralBasis, filter_spec: FilterSpec,
                        signal: GraphSignal) -> np.ndarray:
    """Row-wise squared norm of the filtered signal (complex modulus)."""
    filtered = apply_filter(basis, filter_spec, signal)
    return np.einsum("ij,ij->i", filtered.values, filtered.values.conj()).real


def accumulate_scores(snapshot_stats, method: str, direction: int = 1) -> AgentScores:
    """Elementwise-sum per-snapshot statistics into detector scores."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if direction not in (-1, 1):
        raise ValueError("direction must be +1 or -1")
    stats = [np.asarray(s, dtype=float) for s in snapshot_stats]
    if not stats:
        raise EmptyInput("no snapshot statistics given")
    length = stats[0].shape
    if any(s.shape != length for s in stats):
        raise ValueError("snapshot statistics must share one length")
    total = np.sum(stats, axis=0)
    return AgentScores(
        accumulated=total, snapshots_used=len(stats), method=method, direction=direction
    )
