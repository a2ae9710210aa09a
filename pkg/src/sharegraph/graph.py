"""Minimal immutable undirected simple graph plus random-graph helpers."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable

import numpy as np

Node = Hashable


class Graph:
    """Undirected simple graph over hashable node ids.

    Adjacency sets are frozen after construction; instances are safe to
    share across threads for concurrent read-only traversal.
    """

    __slots__ = ("_adj", "_nodes", "_edge_count")

    def __init__(self, edges: Iterable[tuple[Node, Node]] = (), nodes: Iterable[Node] = ()):
        adj: dict[Node, set[Node]] = {}
        for n in nodes:
            adj.setdefault(n, set())
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-edge not allowed: {u!r}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = {u: frozenset(s) for u, s in adj.items()}
        self._nodes = tuple(sorted(adj))
        self._edge_count = sum(len(s) for s in self._adj.values()) // 2

    @property
    def nodes(self) -> tuple[Node, ...]:
        return self._nodes

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def neighbors(self, u: Node) -> frozenset:
        return self._adj[u]

    def degree(self, u: Node) -> int:
        return len(self._adj[u])

    def has_edge(self, u: Node, v: Node) -> bool:
        return v in self._adj.get(u, frozenset())

    def edges(self) -> list[tuple[Node, Node]]:
        """Each edge once, endpoints ordered, list sorted."""
        out = []
        for u in self._nodes:
            for v in self._adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def connected_components(self) -> list[tuple[Node, ...]]:
        """Components as sorted node tuples, largest first.

        Ties on size break toward the component whose smallest member sorts
        first, so the ordering is deterministic.
        """
        seen: set[Node] = set()
        components = []
        for start in self._nodes:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            components.append(tuple(sorted(comp)))
        components.sort(key=lambda c: (-len(c), c[0]))
        return components

    def subgraph(self, nodes: Iterable[Node]) -> "Graph":
        keep = set(nodes)
        edges = [
            (u, v) for u in keep for v in self._adj.get(u, frozenset()) if v in keep and u < v
        ]
        return Graph(edges, nodes=keep)


def gnm_random_graph(n: int, m: int, seed: int = 0) -> Graph:
    """Uniform random graph with n integer nodes and exactly m edges."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"m must be in [0, {total}], got {m}")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(total, size=m, replace=False)
    row, col = np.triu_indices(n, k=1)
    edges = [(int(row[k]), int(col[k])) for k in chosen]
    return Graph(edges, nodes=range(n))
