"""Brute-force references for tests and certificate checks.

Nothing here walks graphs by BFS or builds DP tables: every answer comes from
plain enumeration (or, for bipartiteness, a parity union-find), so agreement
with the solver is an independent check.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .config import get_solver_config
from .exceptions import InstanceTooLarge
from .graph import ThresholdGraph
from .models import INFINITE, Assignment, CardinalityConstraint, PointsLike, validate_instance


def _pairwise_squared(rows: Sequence[Sequence[float]]) -> List[List[float]]:
    n = len(rows)
    table = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            total = 0.0
            for a, b in zip(rows[i], rows[j]):
                diff = b - a
                total += diff * diff
            table[i][j] = table[j][i] = total
    return table


def brute_force_mdcc(
    points: PointsLike,
    constraint: CardinalityConstraint,
    *,
    max_partitions: Optional[int] = None,
) -> Tuple[float, Assignment]:
    """Best dispersion over every cardinality-exact partition, plus the first witness."""
    point_set = validate_instance(points, constraint)
    n = point_set.n
    limit = max_partitions or get_solver_config().simple_mdcc_oracle_max_partitions
    count = math.comb(n, constraint.c1)
    if count > limit:
        raise InstanceTooLarge(f"C({n}, {constraint.c1}) = {count} partitions exceeds {limit}")

    d2 = _pairwise_squared(point_set.data.tolist())
    best_value = -1.0
    best_groups: Tuple[int, ...] = ()
    for first in combinations(range(n), constraint.c1):
        labels = [2] * n
        for i in first:
            labels[i] = 1
        worst = math.inf
        for i in range(n):
            for j in range(i + 1, n):
                if labels[i] == labels[j] and d2[i][j] < worst:
                    worst = d2[i][j]
        if worst > best_value:
            best_value = worst
            best_groups = tuple(labels)
    dispersion = INFINITE if math.isinf(best_value) else math.sqrt(best_value)
    return dispersion, Assignment(best_groups)


def brute_force_2colcc(
    graph: ThresholdGraph,
    constraint: CardinalityConstraint,
    *,
    max_vertices: Optional[int] = None,
) -> Optional[Assignment]:
    """First proper coloring with exactly c1 vertices of color 1, or ``None``.

    Only colorings with the right color-1 count are enumerated; the others can
    never qualify.
    """
    n = graph.vertex_count
    limit = max_vertices or get_solver_config().simple_mdcc_oracle_max_vertices
    if n > limit:
        raise InstanceTooLarge(f"{n} vertices exceeds the enumeration limit {limit}")
    if constraint.total != n:
        return None
    edges = graph.edges()
    for first in combinations(range(n), constraint.c1):
        colors = [2] * n
        for x in first:
            colors[x] = 1
        if all(colors[u] != colors[v] for u, v in edges):
            return Assignment(tuple(colors))
    return None


def brute_force_subset_sum(
    imbalances: Sequence[int], target: int, *, max_items: Optional[int] = None
) -> bool:
    limit = max_items if max_items is not None else get_solver_config().simple_mdcc_oracle_max_items
    if len(imbalances) > limit:
        raise InstanceTooLarge(f"{len(imbalances)} items exceeds the enumeration limit {limit}")
    for mask in range(1 << len(imbalances)):
        total = sum(value for bit, value in enumerate(imbalances) if mask >> bit & 1)
        if total == target:
            return True
    return False


class ParityDSU:
    """Union-find where each node stores its parity relative to its parent."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.parity = [0] * size
        self.rank = [0] * size

    def find(self, x: int) -> Tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # 路径压缩，同时把奇偶性改为相对根节点
        for node in reversed(path):
            parent = self.parent[node]
            if parent != root:
                self.parity[node] ^= self.parity[parent]
            self.parent[node] = root
        return root, (self.parity[path[0]] if path else 0)

    def union_opposite(self, a: int, b: int) -> bool:
        """Require a and b to have different parity; False on contradiction."""
        root_a, parity_a = self.find(a)
        root_b, parity_b = self.find(b)
        if root_a == root_b:
            return parity_a != parity_b
        if self.rank[root_a] < self.rank[root_b]:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a
        self.parity[root_b] = parity_a ^ parity_b ^ 1
        if self.rank[root_a] == self.rank[root_b]:
            self.rank[root_a] += 1
        return True


def parity_dsu_is_bipartite(graph: ThresholdGraph) -> bool:
    dsu = ParityDSU(graph.vertex_count)
    return all(dsu.union_opposite(u, v) for u, v in graph.edges())
