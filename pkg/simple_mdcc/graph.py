from __future__ import annotations

import bisect
from collections import deque
from typing import Iterable, List, NamedTuple, Optional, Set, Tuple

from .exceptions import DuplicateEdge
from .models import DistanceEntry


class BipartitionComponent(NamedTuple):
    """One connected component split by BFS level parity.

    ``P`` holds the even levels (the root included), ``Q`` the odd levels and
    ``imbalance`` is ``abs(len(P) - len(Q))``, filled in by the BFS.
    """

    component_id: int
    P: Tuple[int, ...]
    Q: Tuple[int, ...]
    imbalance: int

    @property
    def size(self) -> int:
        return len(self.P) + len(self.Q)


class ThresholdGraph:
    """Undirected graph on items 0..n-1 that only ever gains edges."""

    def __init__(self, vertex_count: int) -> None:
        self.vertex_count = vertex_count
        # 邻接表保持升序，BFS 按顶点编号从小到大访问邻居
        self.adjacency: List[List[int]] = [[] for _ in range(vertex_count)]
        self.edge_count = 0
        self._edges: Set[Tuple[int, int]] = set()

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "ThresholdGraph":
        graph = cls(vertex_count)
        for u, v in edges:
            graph.add_edge(u, v)
        return graph

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(self._edges)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on vertex {u} is not allowed")
        if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
            raise IndexError(f"edge {{{u}, {v}}} outside 0..{self.vertex_count - 1}")
        key = (u, v) if u < v else (v, u)
        if key in self._edges:
            raise DuplicateEdge(*key)
        self._edges.add(key)
        bisect.insort(self.adjacency[u], v)
        bisect.insort(self.adjacency[v], u)
        self.edge_count += 1

    def add_edges(self, batch: Iterable[DistanceEntry]) -> None:
        """Insert one threshold batch; every entry must carry the same d2."""
        batch = list(batch)
        if batch and any(entry.d2 != batch[0].d2 for entry in batch):
            raise ValueError("threshold batch mixes different d2 values")
        for entry in batch:
            self.add_edge(entry.u, entry.v)


def add_edges(graph: ThresholdGraph, batch: Iterable[DistanceEntry]) -> None:
    graph.add_edges(batch)


def bipartition_components(graph: ThresholdGraph) -> Optional[List[BipartitionComponent]]:
    """BFS every component from its lowest unvisited vertex.

    Returns ``None`` (NOT_BIPARTITE) as soon as an edge joins two vertices on
    the same BFS level.
    """
    level = [-1] * graph.vertex_count
    adjacency = graph.adjacency
    components: List[BipartitionComponent] = []
    append = components.append
    for root in range(graph.vertex_count):
        if level[root] != -1:
            continue
        level[root] = 0
        if not adjacency[root]:
            append(BipartitionComponent(len(components), (root,), (), 1))
            continue
        even: List[int] = []
        odd: List[int] = []
        queue = deque([root])
        while queue:
            x = queue.popleft()
            (odd if level[x] & 1 else even).append(x)
            for y in adjacency[x]:
                if level[y] == -1:
                    level[y] = level[x] + 1
                    queue.append(y)
                elif level[y] == level[x]:
                    return None
        append(
            BipartitionComponent(
                len(components), tuple(even), tuple(odd), abs(len(even) - len(odd))
            )
        )
    return components
