"""Sweep orchestration, report schemas, and run manifests.

Every report is a plain CSV with a fixed, versioned column order; floats are
rendered with repr and NaN cells are left empty. All randomness derives from
a single master seed so a rerun with the same manifest parameters writes
byte-identical data files.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .affiliation import compare_window
from .dsg import DataSharingGraph, build_dsg, weight_distribution
from .metrics import MetricsReport, degree_distribution, small_world_report
from .shuffle import PRNG_NAME, NullModelComparison, replicate_seed
from .trace import Trace, TimeWindow, summarize, window_slices

SCHEMA_VERSIONS = {
    "summary": "summary-v1",
    "metrics": "metrics-v1",
    "scatter": "scatter-v1",
    "distributions": "distributions-v1",
    "affiliation": "affiliation-v1",
    "nullmodel": "nullmodel-v1",
    "trace": "trace-csv-v1",
    "dsg": "dsg-edge-list-v1",
}

SUMMARY_COLUMNS = ["users", "requests_all", "requests_distinct", "duration_seconds"]

METRICS_COLUMNS = [
    "system", "interval_seconds", "threshold",
    "nodes", "edges", "components", "lcc_nodes", "lcc_edges",
    "cc1", "cc2", "avg_path_length", "cc_random", "l_random",
    "ratio_cc", "ratio_l",
    "window_index", "window_start", "window_end", "path_length_method", "flags",
]

SCATTER_COLUMNS = ["window_index", "window_start", "window_end", "threshold",
                   "ratio_cc", "ratio_l"]

AFFILIATION_COLUMNS = [
    "interval_seconds", "users", "items", "users_sharing",
    "clustering_theory", "clustering_measured",
    "avg_degree_theory", "avg_degree_measured", "avg_degree_measured_all_users",
    "flags",
]

NULLMODEL_COLUMNS = [
    "source", "replicate", "seed",
    "nodes", "edges", "components", "lcc_nodes", "lcc_edges",
    "weight_median", "weight_mean",
    "cc1", "cc2", "avg_path_length", "cc_random", "l_random",
    "ratio_cc", "ratio_l", "flags",
]

NULLMODEL_SUMMARY_COLUMNS = ["source", "ratio_cc_mean", "ratio_cc_std",
                             "ratio_l_mean", "ratio_l_std"]


def fmt_cell(value) -> str:
    """Render one CSV cell: NaN and None become empty, floats use repr."""
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    return str(value)


def render_csv(columns: list[str], rows: list[list]) -> str:
    lines = [",".join(columns)]
    lines += [",".join(fmt_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a run's output bytes.

    ``created_utc`` is informational; all data outputs depend only on the
    input digest, seed, and parameters.
    """

    command: str
    parameters: dict
    master_seed: int
    input_sha256: str | None = None
    tool_version: str = __version__
    prng: str = PRNG_NAME
    numpy_version: str = np.__version__
    schemas: dict = field(default_factory=lambda: dict(SCHEMA_VERSIONS))
    created_utc: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "master_seed": self.master_seed,
            "input_sha256": self.input_sha256,
            "tool_version": self.tool_version,
            "prng": self.prng,
            "numpy_version": self.numpy_version,
            "schemas": self.schemas,
            "created_utc": self.created_utc,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class SweepSpec:
    """Grid of window lengths and thresholds to measure."""

    window_lengths: tuple[int, ...]
    thresholds: tuple[int, ...]
    origin: int | None = None  # None: align windows to the earliest record
    sample_fraction: float | None = None
    master_seed: int = 0
    skip_cc2: bool = False

    def __post_init__(self):
        if not self.window_lengths or not self.thresholds:
            raise ValueError("window_lengths and thresholds must be non-empty")
        if any(length <= 0 for length in self.window_lengths):
            raise ValueError("window lengths must be positive")
        if any(t < 1 for t in self.thresholds):
            raise ValueError("thresholds must be >= 1")


@dataclass(frozen=True)
class SweepCell:
    index: int
    interval_seconds: int
    window_index: int
    window: TimeWindow
    threshold: int
    window_trace: Trace
    sample_fraction: float | None
    path_seed: int
    skip_cc2: bool


@dataclass(frozen=True)
class SweepCellResult:
    cell: SweepCell
    report: MetricsReport | None
    error: str | None = None


def _run_cell(cell: SweepCell) -> SweepCellResult:
    try:
        graph = build_dsg(cell.window_trace, cell.threshold, window=cell.window)
        report = small_world_report(
            graph, sample_fraction=cell.sample_fraction, seed=cell.path_seed,
            skip_cc2=cell.skip_cc2,
        )
        return SweepCellResult(cell=cell, report=report)
    except Exception as exc:  # flagged row; the sweep must keep going
        return SweepCellResult(cell=cell, report=None, error=f"{type(exc).__name__}: {exc}")


def run_sweep(trace: Trace, spec: SweepSpec, workers: int = 1) -> list[SweepCellResult]:
    """Measure every (window instance, threshold) cell of the grid.

    Cells are indexed before execution and results are returned in index
    order, so the output is identical for any worker count. A failing cell
    becomes an error-flagged result instead of aborting the sweep.
    """
    cells: list[SweepCell] = []
    for length in spec.window_lengths:
        origin = spec.origin
        if origin is None:
            origin = trace.records[0].timestamp if trace.records else 0
        for w_idx, (window, window_trace) in enumerate(window_slices(trace, length, origin)):
            for threshold in spec.thresholds:
                index = len(cells)
                cells.append(SweepCell(
                    index=index,
                    interval_seconds=length,
                    window_index=w_idx,
                    window=window,
                    threshold=threshold,
                    window_trace=window_trace,
                    sample_fraction=spec.sample_fraction,
                    path_seed=replicate_seed(spec.master_seed, index),
                    skip_cc2=spec.skip_cc2,
                ))

    if workers <= 1:
        return [_run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell, cells, chunksize=1))


def summary_rows(trace: Trace) -> list[list]:
    s = summarize(trace)
    return [[s.user_count, s.request_count_all, s.request_count_distinct, s.duration]]


def metrics_rows(system: str, results: list[SweepCellResult]) -> list[list]:
    rows = []
    for res in results:
        cell = res.cell
        prefix = [system, cell.interval_seconds, cell.threshold]
        suffix = [cell.window_index, cell.window.start, cell.window.end]
        if res.report is None:
            rows.append(prefix + [None] * 10 + suffix + ["", f"error:{res.error}"])
            continue
        r = res.report
        flags = ";".join(r.flags)
        rows.append(prefix + [
            r.node_count, r.edge_count, r.component_count,
            r.largest_component_nodes, r.largest_component_edges,
            r.cc1, r.cc2, r.avg_path_length, r.cc_random, r.l_random,
            r.ratio_cc, r.ratio_l,
        ] + suffix + [r.path_length_method, flags])
    return rows


def scatter_rows(results: list[SweepCellResult]) -> list[list]:
    rows = []
    for res in results:
        if res.report is None:
            continue
        r = res.report
        if math.isnan(r.ratio_cc) or math.isnan(r.ratio_l):
            continue
        cell = res.cell
        rows.append([cell.window_index, cell.window.start, cell.window.end,
                     cell.threshold, r.ratio_cc, r.ratio_l])
    return rows


def popularity_rows(trace: Trace) -> list[list]:
    counts = Counter(r.item_id for r in trace.records)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [[rank, item, count] for rank, (item, count) in enumerate(ranked, start=1)]


def user_activity_rows(trace: Trace) -> list[list]:
    totals = Counter(r.user_id for r in trace.records)
    distinct: dict[str, set] = {}
    for r in trace.records:
        distinct.setdefault(r.user_id, set()).add(r.item_id)
    ranked = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    return [[rank, user, total, len(distinct[user])]
            for rank, (user, total) in enumerate(ranked, start=1)]


def degree_hist_rows(graph: DataSharingGraph) -> list[list]:
    dist = degree_distribution(graph)
    return [[degree, count] for degree, count in dist.points()]


def weight_hist_rows(graph: DataSharingGraph) -> list[list]:
    dist = weight_distribution(graph)
    return [[weight, count] for weight, count in sorted(dist.counts.items())]


def affiliation_rows(window_trace: Trace, window: TimeWindow | None,
                     interval_seconds: int | None) -> list[list]:
    bipartite, prediction, projection = compare_window(window_trace, window)
    return [[
        interval_seconds,
        bipartite.user_count,
        bipartite.item_count,
        projection.node_count,
        prediction.clustering_theory,
        prediction.clustering_measured,
        prediction.avg_degree_theory,
        prediction.avg_degree_measured,
        prediction.avg_degree_measured_all_users,
        ";".join(prediction.flags),
    ]]


def nullmodel_rows(comparison: NullModelComparison) -> list[list]:
    rows = []
    for row in comparison.rows:
        r = row.report
        rows.append([
            row.source, row.replicate, row.seed,
            r.node_count, r.edge_count, r.component_count,
            r.largest_component_nodes, r.largest_component_edges,
            row.weight_median, row.weight_mean,
            r.cc1, r.cc2, r.avg_path_length, r.cc_random, r.l_random,
            r.ratio_cc, r.ratio_l, ";".join(r.flags),
        ])
    return rows


def nullmodel_summary_rows(comparison: NullModelComparison) -> list[list]:
    summary = comparison.summary()
    return [[source,
             stats["ratio_cc_mean"], stats["ratio_cc_std"],
             stats["ratio_l_mean"], stats["ratio_l_std"]]
            for source, stats in summary.items()]
