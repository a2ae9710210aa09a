"""Independent oracles and graph/trace builders used across the test suite.

Everything here deliberately takes the slow, direct route (all-pairs set
intersections, node-triple enumeration, union-find, finite differences) so
the fast implementations are checked against a different algorithm.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from sharegraph import Graph, Trace, TraceRecord


# ---------------------------------------------------------------------------
# clustering oracles

def oracle_cc1(graph: Graph) -> float:
    if graph.node_count == 0:
        return float("nan")
    total = 0.0
    for u in graph.nodes:
        nb = sorted(graph.neighbors(u))
        k = len(nb)
        if k < 2:
            continue
        links = sum(1 for a, b in combinations(nb, 2) if graph.has_edge(a, b))
        total += links / (k * (k - 1) / 2)
    return total / graph.node_count


def oracle_cc2(graph: Graph) -> float:
    """Triangles and connected triples by explicit node-triple enumeration."""
    triangles = 0
    triples = 0
    for a, b, c in combinations(graph.nodes, 3):
        ab = graph.has_edge(a, b)
        bc = graph.has_edge(b, c)
        ac = graph.has_edge(a, c)
        edges = ab + bc + ac
        if edges == 3:
            triangles += 1
            triples += 3
        elif edges == 2:
            triples += 1
    if triples == 0:
        return float("nan")
    return 3 * triangles / triples


def oracle_triangles(graph: Graph) -> int:
    return sum(
        1 for a, b, c in combinations(graph.nodes, 3)
        if graph.has_edge(a, b) and graph.has_edge(b, c) and graph.has_edge(a, c)
    )


# ---------------------------------------------------------------------------
# data-sharing graph oracle: all-pairs distinct-item-set intersection

def oracle_dsg_edges(trace: Trace, threshold: int) -> dict[tuple[str, str], int]:
    items: dict[str, set[str]] = {}
    for r in trace.records:
        items.setdefault(r.user_id, set()).add(r.item_id)
    edges = {}
    for u, v in combinations(sorted(items), 2):
        shared = len(items[u] & items[v])
        if shared >= threshold:
            edges[(u, v)] = shared
    return edges


# ---------------------------------------------------------------------------
# union-find component oracle

class UnionFind:
    def __init__(self, elements):
        self.parent = {e: e for e in elements}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def oracle_components(nodes, edges) -> list[frozenset]:
    uf = UnionFind(nodes)
    for u, v in edges:
        uf.union(u, v)
    groups: dict = {}
    for n in nodes:
        groups.setdefault(uf.find(n), set()).add(n)
    return sorted((frozenset(g) for g in groups.values()),
                  key=lambda c: (-len(c), min(c)))


# ---------------------------------------------------------------------------
# finite-difference derivative oracle for generating functions

def poly_eval(dist: dict[int, float], x: float) -> float:
    return sum(d * x ** j for j, d in sorted(dist.items()))


def central_d1(f, x: float, h: float = 1e-4) -> float:
    """Five-point central first derivative, O(h^4)."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def central_d2(f, x: float, h: float = 1e-4) -> float:
    """Five-point central second derivative, O(h^4)."""
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x)
            + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def central_d3(f, x: float, h: float = 1e-3) -> float:
    """Seven-point central third derivative, O(h^4).

    Uses a larger step than the lower orders: the h^-3 division amplifies
    round-off, which dominates below h ~ 1e-3.
    """
    return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h)
            + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) / (8 * h ** 3)


# ---------------------------------------------------------------------------
# graph builders

def complete_graph(n: int) -> Graph:
    return Graph(combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph((i, i + 1) for i in range(n - 1))


def star_graph(leaves: int) -> Graph:
    return Graph(("c", f"x{i}") for i in range(leaves))


def ring_of_cliques(num_cliques: int, clique_size: int) -> Graph:
    """Cliques joined in a ring by one edge between consecutive cliques."""
    edges = []
    for g in range(num_cliques):
        members = [(g, i) for i in range(clique_size)]
        edges.extend(combinations(members, 2))
        edges.append(((g, 0), ((g + 1) % num_cliques, 1)))
    return Graph(edges)


def random_connected_graph(n: int, m: int, seed: int = 0) -> Graph:
    """Connected graph: random spanning tree plus random extra edges."""
    assert m >= n - 1
    rng = np.random.default_rng(seed)
    order = [int(i) for i in rng.permutation(n)]
    edges = set()
    for pos in range(1, n):
        anchor = order[int(rng.integers(0, pos))]
        edges.add(tuple(sorted((order[pos], anchor))))
    while len(edges) < m:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u != v:
            edges.add(tuple(sorted((u, v))))
    return Graph(edges, nodes=range(n))


def random_tree(n: int, seed: int = 0) -> Graph:
    return random_connected_graph(n, n - 1, seed)


# ---------------------------------------------------------------------------
# trace builders

def make_trace(rows) -> Trace:
    """Trace from (user, item[, timestamp]) tuples; timestamps default to row index."""
    records = []
    for idx, row in enumerate(rows):
        if len(row) == 2:
            records.append(TraceRecord(row[0], row[1], idx))
        else:
            records.append(TraceRecord(row[0], row[1], row[2]))
    return Trace(tuple(records))


def random_trace(rng: np.random.Generator, users: int, items: int,
                 records: int, span: int = 1000) -> Trace:
    rows = sorted(
        (int(t), f"u{int(u)}", f"i{int(i)}")
        for u, i, t in zip(
            rng.integers(0, users, size=records),
            rng.integers(0, items, size=records),
            rng.integers(0, span, size=records),
        )
    )
    return Trace(tuple(TraceRecord(u, i, t) for t, u, i in rows))
