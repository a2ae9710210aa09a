"""Weighted data-sharing graphs built from windowed request traces.

Nodes are users; an edge joins two users whose sets of distinct requested
items overlap by at least the threshold inside the window. Edge weight is the
size of that overlap. Zero-weight pairs and isolated users never appear.
"""

from __future__ import annotations

import json
import math
import statistics
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph
from .trace import TimeWindow, Trace


@dataclass(frozen=True)
class DataSharingGraph:
    """Weighted undirected user graph for one (window, threshold) pair.

    ``edges`` maps each unordered pair (u, v) with u < v to the count of
    distinct items the two users both requested. All weights are >=
    ``threshold`` and every node has degree >= 1 by construction.
    """

    edges: dict[tuple[str, str], int]
    threshold: int
    window: TimeWindow | None = None
    nodes: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError(f"threshold must be >= 1, got {self.threshold}")
        nodes = set()
        for (u, v), weight in self.edges.items():
            if u == v:
                raise ValueError(f"self-edge not allowed: {u!r}")
            if u > v:
                raise ValueError(f"edge key must be ordered (u < v): {(u, v)!r}")
            if weight < self.threshold:
                raise ValueError(f"edge {(u, v)!r} weight {weight} below threshold {self.threshold}")
            nodes.add(u)
            nodes.add(v)
        object.__setattr__(self, "nodes", tuple(sorted(nodes)))

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[str, str, int]]:
        return [(u, v, self.edges[(u, v)]) for u, v in sorted(self.edges)]

    def to_graph(self) -> Graph:
        """Unweighted view used by the metric computations."""
        return Graph(self.edges.keys(), nodes=self.nodes)


@dataclass(frozen=True)
class WeightDistribution:
    """Histogram of edge weights with median and mean (NaN when empty)."""

    counts: dict[int, int]
    mean: float
    median: float

    @property
    def edge_count(self) -> int:
        return sum(self.counts.values())


def build_dsg(window_trace: Trace, threshold: int, window: TimeWindow | None = None) -> DataSharingGraph:
    """Build the data-sharing graph of a window trace.

    Pair weights are counted item-by-item (invert the trace to item -> users,
    then every pair of distinct users of one item shares it), which avoids
    touching the quadratically many user pairs that share nothing. Repeat
    requests by the same user do not raise weights.
    """
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")

    item_users: dict[str, set[str]] = defaultdict(set)
    for record in window_trace.records:
        item_users[record.item_id].add(record.user_id)

    weights: dict[tuple[str, str], int] = defaultdict(int)
    for users in item_users.values():
        if len(users) < 2:
            continue
        for u, v in combinations(sorted(users), 2):
            weights[(u, v)] += 1

    edges = {pair: w for pair, w in weights.items() if w >= threshold}
    return DataSharingGraph(edges=edges, threshold=threshold, window=window)


def weight_distribution(g: DataSharingGraph) -> WeightDistribution:
    """Histogram the edge weights; median/mean are NaN for an empty graph."""
    weights = sorted(g.edges.values())
    counts: dict[int, int] = {}
    for w in weights:
        counts[w] = counts.get(w, 0) + 1
    if not weights:
        return WeightDistribution(counts={}, mean=math.nan, median=math.nan)
    return WeightDistribution(
        counts=counts,
        mean=sum(weights) / len(weights),
        median=float(statistics.median(weights)),
    )


def connected_components(g: DataSharingGraph) -> tuple[int, DataSharingGraph]:
    """Component count and the induced subgraph of the largest component.

    Size ties break toward the component containing the lexicographically
    smallest node id. An empty graph yields (0, empty graph).
    """
    components = g.to_graph().connected_components()
    if not components:
        return 0, DataSharingGraph(edges={}, threshold=g.threshold, window=g.window)
    member = set(components[0])
    sub = {pair: w for pair, w in g.edges.items() if pair[0] in member}
    return len(components), DataSharingGraph(edges=sub, threshold=g.threshold, window=g.window)


def dumps(g: DataSharingGraph) -> str:
    """Serialize to a text edge list with a JSON header line, stably ordered."""
    header = {
        "format": "dsg-edge-list-v1",
        "window": [g.window.start, g.window.end] if g.window else None,
        "threshold": g.threshold,
        "nodes": g.node_count,
    }
    lines = [f"# {json.dumps(header, sort_keys=True)}"]
    lines += [f"{u},{v},{w}" for u, v, w in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def loads(text: str) -> DataSharingGraph:
    """Inverse of dumps. Validates the header node count."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing graph header line")
    header = json.loads(lines[0][2:])
    if header.get("format") != "dsg-edge-list-v1":
        raise ValueError(f"unsupported graph format: {header.get('format')!r}")
    edges = {}
    for ln in lines[1:]:
        u, v, w = ln.split(",")
        edges[(u, v)] = int(w)
    window = TimeWindow(*header["window"]) if header["window"] else None
    g = DataSharingGraph(edges=edges, threshold=header["threshold"], window=window)
    if g.node_count != header["nodes"]:
        raise ValueError(f"header says {header['nodes']} nodes, edge list has {g.node_count}")
    return g
