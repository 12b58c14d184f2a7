"""Immutable simple undirected graphs over dense 0-based integer ids."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex sets."""


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[frozenset[int], ...]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertices(self) -> range:
        return range(self.vertex_count)

    def edges(self) -> Iterator[Edge]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, sorted."""
        for u, nbrs in enumerate(self.adjacency):
            for v in sorted(nbrs):
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def __len__(self) -> int:
        return self.vertex_count

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


@dataclass(frozen=True)
class IdMap:
    """Relabeling produced by :func:`induced_subgraph`.

    ``to_parent[i]`` is the original id of subgraph vertex ``i``;
    ``to_sub`` is the inverse.
    """

    to_parent: tuple[int, ...]
    to_sub: dict[int, int]

    def lift(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.to_parent[v] for v in vertices)

    def lower(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.to_sub[v] for v in vertices)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj))


def check_vertex_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        if not 0 <= v < g.vertex_count:
            raise GraphError(f"vertex {v} outside [0, {g.vertex_count})")
    return s


def find_internal_edge(g: Graph, s: Iterable[int]) -> Edge | None:
    """Return the smallest edge with both endpoints in ``s``, if any."""
    s = check_vertex_set(g, s)
    for u in sorted(s):
        hit = g.adjacency[u] & s
        if hit:
            return (u, min(hit)) if u < min(hit) else (min(hit), u)
    return None


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    return find_internal_edge(g, s) is None


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, IdMap]:
    keep = sorted(check_vertex_set(g, s))
    to_sub = {v: i for i, v in enumerate(keep)}
    adj = tuple(
        frozenset(to_sub[w] for w in g.adjacency[v] if w in to_sub) for v in keep
    )
    return Graph(len(keep), adj), IdMap(tuple(keep), to_sub)


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Min-degree elimination order and the degeneracy.

    Ties are broken by smallest vertex id. The degeneracy is the largest
    degree a vertex had at the moment it was removed.
    """
    deg = [len(a) for a in g.adjacency]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.vertex_count
    order: list[int] = []
    d_max = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        if d > d_max:
            d_max = d
        for w in g.adjacency[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, d_max


def greedy_independent_set(
    g: Graph, order: Iterable[int], limit: int | None = None
) -> list[int]:
    """Scan ``order`` and keep each vertex with no kept neighbor.

    Along a degeneracy elimination order every kept vertex blocks at most
    ``d`` later vertices, so at least ``ceil(n / (d + 1))`` are kept.
    """
    blocked = [False] * g.vertex_count
    chosen: list[int] = []
    for v in order:
        if blocked[v]:
            continue
        chosen.append(v)
        if limit is not None and len(chosen) >= limit:
            break
        blocked[v] = True
        for w in g.adjacency[v]:
            blocked[w] = True
    return chosen
