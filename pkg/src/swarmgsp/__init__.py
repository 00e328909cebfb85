"""Spectral anomaly detection for simulated swarms.

Simulate swarms with one behaviorally anomalous agent, lift per-agent
signals into the graph Fourier domain of a position-derived kernel graph,
and flag the anomaly by thresholding graph-filtered signal energy, with
Monte-Carlo ROC/AUC evaluation of the detectors.
"""

from .detection import (
    AgentScores,
    CaseSpec,
    accumulate_scores,
    case_filter_spec,
    per_agent_statistic,
)
from .experiment import (
    ExperimentConfig,
    RocCurvePoint,
    ScoreTable,
    auc,
    auc_vs_snapshots,
    run_case,
)
from .kernels import BACKEND
from .models import (
    CouzinParams,
    SwarmState,
    SwarmalatorParams,
    couzin_step,
    init_swarm,
    order_metrics,
    swarmalator_step,
)
from .spectral import (
    FilterSpec,
    GraphSignal,
    SpectralBasis,
    WeightedGraph,
    apply_filter,
    eigendecompose,
    gft,
    gft_power,
    igft,
    normalized_laplacian,
)
from .swarmgraph import build_swarm_graph, extract_signal

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "WeightedGraph",
    "SpectralBasis",
    "GraphSignal",
    "FilterSpec",
    "normalized_laplacian",
    "eigendecompose",
    "gft",
    "igft",
    "gft_power",
    "apply_filter",
    "build_swarm_graph",
    "extract_signal",
    "SwarmState",
    "init_swarm",
    "CouzinParams",
    "couzin_step",
    "SwarmalatorParams",
    "swarmalator_step",
    "order_metrics",
    "CaseSpec",
    "AgentScores",
    "case_filter_spec",
    "per_agent_statistic",
    "accumulate_scores",
    "ExperimentConfig",
    "RocCurvePoint",
    "ScoreTable",
    "run_case",
    "auc",
    "auc_vs_snapshots",
]
