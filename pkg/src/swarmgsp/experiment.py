"""Monte-Carlo ensembles, snapshot accumulation, and ROC/AUC evaluation.

Each run simulates one swarm containing one anomalous agent, samples
snapshots after burn-in, and scores every agent under both detectors.
Scores pool across runs (oriented by the case direction) into one empirical
AUC per detector and snapshot count.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .detection import METHODS, CaseSpec, per_agent_statistic
from .errors import DimensionMismatch, SingleClass
from .models.couzin import pack_couzin_params
from .models.state import init_swarm
from .models.swarmalator import pack_swarmalator_params
from .simulate import make_stepper, run_steps
from .spectral import eigendecompose, normalized_laplacian
from .swarmgraph import build_swarm_graph, extract_signal


@dataclass(frozen=True)
class ExperimentConfig:
    """Monte-Carlo protocol knobs for one detection scenario."""

    runs: int
    burn_in_steps: int
    snapshot_interval: int
    max_snapshots: int
    n_agents: int
    anomalous_index: int
    base_seed: int
    workers: int = 1
    # (anomaly field name, candidate values); each run draws one value
    # uniformly for its anomalous agent.
    anomaly_sweep: Optional[tuple[str, tuple[float, ...]]] = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not (0 <= self.anomalous_index < self.n_agents):
            raise ValueError("anomalous_index must name an agent")
        if self.snapshot_interval < 1 or self.max_snapshots < 1:
            raise ValueError("snapshot_interval and max_snapshots must be >= 1")
        if self.burn_in_steps < 0:
            raise ValueError("burn_in_steps must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class RocCurvePoint:
    case_id: int
    method: str
    num_snapshots: int
    auc: float


@dataclass
class ScoreTable:
    """Cumulative per-agent scores for every run and snapshot-count prefix.

    ``cumulative[method]`` has shape (runs, max_snapshots, n_agents); rows of
    failed runs are NaN and listed in ``failed_runs``.
    """

    case_id: int
    methods: tuple
    cumulative: dict
    anomalous_index: int
    directions: dict
    run_seeds: list
    anomaly_values: list
    failed_runs: list = field(default_factory=list)

    @property
    def n_runs(self) -> int:
        return next(iter(self.cumulative.values())).shape[0]

    @property
    def max_snapshots(self) -> int:
        return next(iter(self.cumulative.values())).shape[1]

    @property
    def n_agents(self) -> int:
        return next(iter(self.cumulative.values())).shape[2]

    def ok_mask(self) -> np.ndarray:
        mask = np.ones(self.n_runs, dtype=bool)
        for run_index, _ in self.failed_runs:
            mask[run_index] = False
        return mask


def auc(scores: Sequence[float], labels: Sequence[bool]) -> float:
    """Probability that a positive outscores a negative (ties count half).

    Computed by midrank summation; exactly equals brute-force enumeration
    of all (positive, negative) pairs.
    """
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=bool)
    if scores.ndim != 1 or scores.shape != labels.shape:
        raise DimensionMismatch("scores and labels must be equal-length vectors")
    n = scores.size
    n_pos = int(labels.sum())
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("need at least one positive and one negative label")
    order = np.argsort(scores, kind="mergesort")
    sorted_scores = scores[order]
    is_group_start = np.concatenate(([True], sorted_scores[1:] != sorted_scores[:-1]))
    starts = np.flatnonzero(is_group_start)
    ends = np.concatenate((starts[1:], [n]))
    midranks = np.repeat((starts + 1 + ends) / 2.0, ends - starts)
    ranks = np.empty(n)
    ranks[order] = midranks
    u_statistic = ranks[labels].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u_statistic / (n_pos * n_neg))


def _agent_params(case: CaseSpec, cfg: ExperimentConfig, swept_value):
    anomaly = case.anomaly_params
    if swept_value is not None:
        field_name, _ = cfg.anomaly_sweep
        anomaly = replace(anomaly, **{field_name: float(swept_value)})
    params = [case.nominal_params] * cfg.n_agents
    params[cfg.anomalous_index] = anomaly
    return params


def _single_run(case: CaseSpec, cfg: ExperimentConfig, run_index: int):
    """One seeded trajectory; returns cumulative stats per method."""
    seed = cfg.base_seed + run_index
    init_stream, dynamics_stream, sweep_stream = np.random.SeedSequence(seed).spawn(3)

    swept_value = None
    if cfg.anomaly_sweep is not None:
        _, values = cfg.anomaly_sweep
        sweep_rng = np.random.default_rng(sweep_stream)
        swept_value = float(values[sweep_rng.integers(len(values))])

    params = _agent_params(case, cfg, swept_value)
    state = init_swarm(case.model_kind, cfg.n_agents, init_stream, case.spatial_extent)
    if case.model_kind == "couzin":
        step = make_stepper(pack_couzin_params(params),
                            np.random.default_rng(dynamics_stream))
    else:
        step = make_stepper(pack_swarmalator_params(params))

    state = run_steps(state, step, cfg.burn_in_steps)

    snapshot_stats = {method: [] for method in METHODS}
    for _ in range(cfg.max_snapshots):
        state = run_steps(state, step, cfg.snapshot_interval)
        basis = eigendecompose(normalized_laplacian(build_swarm_graph(state.positions)))
        signal = extract_signal(state, case.signal_kind)
        for method in METHODS:
            snapshot_stats[method].append(
                per_agent_statistic(basis, case.filter_for(method), signal)
            )

    cumulative = {
        method: np.cumsum(np.asarray(stats), axis=0)
        for method, stats in snapshot_stats.items()
    }
    return seed, swept_value, cumulative


def run_case(case: CaseSpec, cfg: ExperimentConfig) -> ScoreTable:
    """Run the full Monte-Carlo ensemble for one scenario.

    A run that raises marks itself failed (NaN rows) without stopping the
    ensemble; failed runs are excluded from pooled AUCs and reported.
    """
    shape = (cfg.runs, cfg.max_snapshots, cfg.n_agents)
    table = ScoreTable(
        case_id=case.case_id,
        methods=METHODS,
        cumulative={m: np.full(shape, np.nan) for m in METHODS},
        anomalous_index=cfg.anomalous_index,
        directions={m: case.direction_for(m) for m in METHODS},
        run_seeds=[cfg.base_seed + i for i in range(cfg.runs)],
        anomaly_values=[None] * cfg.runs,
    )

    def record(run_index, outcome, error):
        if error is not None:
            table.failed_runs.append((run_index, error))
            return
        _, swept_value, cumulative = outcome
        table.anomaly_values[run_index] = swept_value
        for method in METHODS:
            table.cumulative[method][run_index] = cumulative[method]

    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = {
                i: pool.submit(_single_run, case, cfg, i) for i in range(cfg.runs)
            }
            for run_index, future in futures.items():
                try:
                    record(run_index, future.result(), None)
                except Exception as exc:  # noqa: BLE001 - per-run isolation
                    record(run_index, None, repr(exc))
    else:
        for run_index in range(cfg.runs):
            try:
                record(run_index, _single_run(case, cfg, run_index), None)
            except Exception as exc:  # noqa: BLE001 - per-run isolation
                record(run_index, None, repr(exc))

    table.failed_runs.sort()
    return table


def _pooled_auc(table: ScoreTable, method: str, num_snapshots: int,
                run_mask: np.ndarray) -> float:
    scores = table.cumulative[method][run_mask, num_snapshots - 1, :]
    oriented = (table.directions[method] * scores).ravel()
    labels = np.zeros(table.n_agents, dtype=bool)
    labels[table.anomalous_index] = True
    return auc(oriented, np.tile(labels, int(run_mask.sum())))


def auc_vs_snapshots(table: ScoreTable) -> list[RocCurvePoint]:
    """Pooled AUC per detector and snapshot-count prefix."""
    ok = table.ok_mask()
    if not ok.any():
        raise SingleClass("every run failed; nothing to pool")
    return [
        RocCurvePoint(table.case_id, method, k, _pooled_auc(table, method, k, ok))
        for method in table.methods
        for k in range(1, table.max_snapshots + 1)
    ]


def auc_by_anomaly_value(table: ScoreTable) -> list[tuple[float, RocCurvePoint]]:
    """Per-sweep-value AUC breakdown (empty when no sweep was used)."""
    ok = table.ok_mask()
    values = sorted({v for v in table.anomaly_values if v is not None})
    points = []
    for value in values:
        mask = ok & np.array([v == value for v in table.anomaly_values])
        if not mask.any():
            continue
        for method in table.methods:
            for k in range(1, table.max_snapshots + 1):
                points.append(
                    (value, RocCurvePoint(table.case_id, method, k,
                                          _pooled_auc(table, method, k, mask)))
                )
    return points


def format_float(x) -> str:
    """17-significant-digit decimal, enough to reproduce any double."""
    return f"{float(x):.17g}"


def write_scores_csv(path, table: ScoreTable) -> None:
    ok = table.ok_mask()
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["run_id", "agent_id", "is_anomalous", "method", "snapshots",
             "cumulative_score"]
        )
        for run_index in range(table.n_runs):
            if not ok[run_index]:
                continue
            for method in table.methods:
                block = table.cumulative[method][run_index]
                for k in range(1, table.max_snapshots + 1):
                    for agent in range(table.n_agents):
                        writer.writerow([
                            run_index,
                            agent,
                            int(agent == table.anomalous_index),
                            method,
                            k,
                            format_float(block[k - 1, agent]),
                        ])


def write_curves_csv(path, points: Sequence[RocCurvePoint], n_runs: int) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["case_id", "method", "snapshots", "auc", "n_runs"])
        for p in points:
            writer.writerow(
                [p.case_id, p.method, p.num_snapshots, format_float(p.auc), n_runs]
            )


def write_sweep_curves_csv(path, breakdown, runs_per_value: dict) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["case_id", "anomaly_value", "method", "snapshots", "auc", "n_runs"]
        )
        for value, p in breakdown:
            writer.writerow([
                p.case_id,
                format_float(value),
                p.method,
                p.num_snapshots,
                format_float(p.auc),
                runs_per_value[value],
            ])
