"""Graph metrics: clustering coefficients, path lengths, random baselines.

Two clustering definitions are computed. cc1 averages, over every node, the
fraction of realized edges among that node's neighbors (nodes with degree
below 2 contribute 0). cc2 is 3 * triangles / connected triples, where a
connected triple is a node with an unordered pair of distinct neighbors.
The random-graph reference values are cc_r = 2|E| / (|V| (|V|-1)) and
l_r = log|V| / log(|E|/|V|); a graph is reported small-world when its
clustering far exceeds cc_r while its average path length stays near l_r.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .dsg import DataSharingGraph
from .errors import DisconnectedGraphError
from .graph import Graph


def _as_graph(g) -> Graph:
    if isinstance(g, DataSharingGraph):
        return g.to_graph()
    return g


def clustering_cc1(g) -> float:
    """Mean over all nodes of (edges among neighbors) / (k(k-1)/2).

    Degree-0 and degree-1 nodes contribute 0. NaN for an empty graph.
    """
    graph = _as_graph(g)
    if graph.node_count == 0:
        return math.nan
    total = 0.0
    for u in graph.nodes:
        nb = graph.neighbors(u)
        k = len(nb)
        if k < 2:
            continue
        links = sum(len(graph.neighbors(v) & nb) for v in nb) // 2
        total += links / (k * (k - 1) / 2)
    return total / graph.node_count


def triangle_count(g) -> int:
    """Exact triangle count via neighbor intersection.

    Edges are oriented from lower to higher (degree, node) rank so each
    triangle is counted at exactly one of its corners.
    """
    graph = _as_graph(g)
    rank = {u: (graph.degree(u), u) for u in graph.nodes}
    count = 0
    for u in graph.nodes:
        ru = rank[u]
        for v in graph.neighbors(u):
            if rank[v] <= ru:
                continue
            rv = rank[v]
            common = graph.neighbors(u) & graph.neighbors(v)
            count += sum(1 for w in common if rank[w] > rv)
    return count


def connected_triple_count(g) -> int:
    """Number of (node, unordered neighbor pair) combinations."""
    graph = _as_graph(g)
    return sum(graph.degree(u) * (graph.degree(u) - 1) // 2 for u in graph.nodes)


def clustering_cc2(g) -> float:
    """3 * triangles / connected triples. NaN when the graph has no triples."""
    triples = connected_triple_count(g)
    if triples == 0:
        return math.nan
    return 3 * triangle_count(g) / triples


@dataclass(frozen=True)
class DegreeDistribution:
    """Histogram of node degrees."""

    counts: dict[int, int]

    def points(self) -> list[tuple[int, int]]:
        """(degree, count) pairs sorted by degree, ready for log-log plots."""
        return sorted(self.counts.items())

    @property
    def node_count(self) -> int:
        return sum(self.counts.values())


def degree_distribution(g) -> DegreeDistribution:
    graph = _as_graph(g)
    counts: dict[int, int] = {}
    for u in graph.nodes:
        d = graph.degree(u)
        counts[d] = counts.get(d, 0) + 1
    return DegreeDistribution(counts=counts)


def _bfs_distance_sum(graph: Graph, source) -> tuple[int, int]:
    """(sum of hop distances from source, number of reached nodes)."""
    dist = {source: 0}
    queue = deque([source])
    total = 0
    while queue:
        x = queue.popleft()
        for y in graph.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                total += dist[y]
                queue.append(y)
    return total, len(dist)


def average_path_length(g, *, sample_fraction: float | None = None, seed: int = 0) -> float:
    """Mean shortest-path hop count of a connected graph.

    Exact mode (sample_fraction=None) runs BFS from every node. Sampled mode
    runs BFS from ceil(sample_fraction * |V|) uniformly chosen sources and
    averages over (source, other node) pairs; with fraction 1.0 it equals the
    exact mean. Distance sums are accumulated in exact integer arithmetic.

    Raises:
        DisconnectedGraphError: if any BFS fails to reach the whole graph.
    """
    graph = _as_graph(g)
    v = graph.node_count
    if v < 2:
        raise ValueError("average path length needs at least 2 nodes")

    if sample_fraction is None:
        sources = graph.nodes
    else:
        if not 0 < sample_fraction <= 1:
            raise ValueError(f"sample_fraction must be in (0, 1], got {sample_fraction}")
        k = math.ceil(sample_fraction * v)
        rng = np.random.default_rng(seed)
        picks = rng.choice(v, size=k, replace=False)
        sources = [graph.nodes[int(i)] for i in picks]

    total = 0
    for s in sources:
        dist_sum, reached = _bfs_distance_sum(graph, s)
        if reached != v:
            raise DisconnectedGraphError(
                f"graph is disconnected: BFS from {s!r} reached {reached} of {v} nodes"
            )
        total += dist_sum
    return total / (len(sources) * (v - 1))


def random_baselines(v: int, e: int) -> tuple[float, float]:
    """Clustering and path-length reference values of a random graph.

    cc_r = 2e / (v(v-1)); l_r = log(v) / log(e/v). The log ratio is
    base-independent; natural logs are used. When e <= v the l_r denominator
    is non-positive, so l_r is returned as NaN.
    """
    if v < 2:
        raise ValueError(f"need v >= 2, got {v}")
    if e < 1:
        raise ValueError(f"need e >= 1, got {e}")
    cc_r = 2 * e / (v * (v - 1))
    l_r = math.log(v) / math.log(e / v) if e > v else math.nan
    return cc_r, l_r


@dataclass(frozen=True)
class MetricsReport:
    """All measured and baseline quantities for one graph.

    Clustering, path length, and the random baselines are computed on the
    largest connected component; ratio_cc = cc1/cc_random and
    ratio_l = avg_path_length/l_random are the small-world verdict
    coordinates. Undefined quantities are NaN, with a reason in ``flags``.
    """

    node_count: int
    edge_count: int
    component_count: int
    largest_component_nodes: int
    largest_component_edges: int
    cc1: float
    cc2: float
    avg_path_length: float
    cc_random: float
    l_random: float
    ratio_cc: float
    ratio_l: float
    path_length_method: str
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "component_count": self.component_count,
            "largest_component_nodes": self.largest_component_nodes,
            "largest_component_edges": self.largest_component_edges,
            "cc1": self.cc1,
            "cc2": self.cc2,
            "avg_path_length": self.avg_path_length,
            "cc_random": self.cc_random,
            "l_random": self.l_random,
            "ratio_cc": self.ratio_cc,
            "ratio_l": self.ratio_l,
            "path_length_method": self.path_length_method,
            "flags": list(self.flags),
        }

    def to_json(self) -> str:
        """One JSON object; NaN fields become null so the output is strict JSON."""
        payload = {
            key: None if isinstance(value, float) and math.isnan(value) else value
            for key, value in self.to_dict().items()
        }
        return json.dumps(payload, sort_keys=True)


def _ratio(num: float, den: float) -> float:
    if math.isnan(num) or math.isnan(den) or den == 0:
        return math.nan
    return num / den


def small_world_report(g, *, sample_fraction: float | None = None, seed: int = 0,
                       skip_cc2: bool = False) -> MetricsReport:
    """Full metrics report for a graph (largest component for the metrics)."""
    graph = _as_graph(g)
    method = "exact" if sample_fraction is None else f"sampled(fraction={sample_fraction},seed={seed})"
    flags: list[str] = []

    components = graph.connected_components()
    if not components:
        return MetricsReport(
            node_count=0, edge_count=0, component_count=0,
            largest_component_nodes=0, largest_component_edges=0,
            cc1=math.nan, cc2=math.nan, avg_path_length=math.nan,
            cc_random=math.nan, l_random=math.nan,
            ratio_cc=math.nan, ratio_l=math.nan,
            path_length_method=method, flags=("empty_graph",),
        )

    largest = graph.subgraph(components[0])
    lv, le = largest.node_count, largest.edge_count

    cc1 = clustering_cc1(largest)
    if skip_cc2:
        cc2 = math.nan
        flags.append("cc2_skipped")
    else:
        cc2 = clustering_cc2(largest)
        if math.isnan(cc2):
            flags.append("cc2_no_triples")

    if lv >= 2:
        avg_l = average_path_length(largest, sample_fraction=sample_fraction, seed=seed)
        cc_random, l_random = random_baselines(lv, le)
        if math.isnan(l_random):
            flags.append("l_random_unstable")
    else:
        avg_l = cc_random = l_random = math.nan
        flags.append("single_node_component")

    return MetricsReport(
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        component_count=len(components),
        largest_component_nodes=lv,
        largest_component_edges=le,
        cc1=cc1,
        cc2=cc2,
        avg_path_length=avg_l,
        cc_random=cc_random,
        l_random=l_random,
        ratio_cc=_ratio(cc1, cc_random),
        ratio_l=_ratio(avg_l, l_random),
        path_length_method=method,
        flags=tuple(flags),
    )
