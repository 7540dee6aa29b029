"""Cardinality-constrained 2-coloring via component imbalances and subset sum."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from .exceptions import CardinalityMismatch
from .graph import BipartitionComponent, ThresholdGraph, bipartition_components
from .models import Assignment, CardinalityConstraint

Cell = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class SubsetSumTable:
    """``cells[x]`` is ``None`` when sum x is unreachable, else the link ``(i, s)``.

    ``i`` is the 1-based index of the imbalance that first reached x and ``s``
    its value; ``cells[0] == (0, 0)``.
    """

    cells: Tuple[Cell, ...]

    @property
    def total(self) -> int:
        """Largest sum the table tracks."""
        return len(self.cells) - 1

    def reachable(self, x: int) -> bool:
        return 0 <= x <= self.total and self.cells[x] is not None

    def backtrack(self, target: int) -> List[Tuple[int, int]]:
        """Summands ``(i, s)`` that reach ``target``, highest index first."""
        if not self.reachable(target):
            raise ValueError(f"sum {target} is not reachable")
        path: List[Tuple[int, int]] = []
        j = target
        while j != 0:
            i, s = self.cells[j]  # type: ignore[misc]
            path.append((i, s))
            j -= s
        return path


@dataclass(frozen=True)
class AdjustedTargets:
    c1_prime: int
    c2_prime: int


def subset_sum_table(imbalances: Sequence[int], limit: Optional[int] = None) -> SubsetSumTable:
    """Backtrackable subset-sum table over positive imbalances.

    Components are processed in ascending index; a cell is written only while
    still unreachable (first write wins), which is what keeps every
    backtracking path on strictly decreasing, distinct component indices.
    The descending inner loop over sums is expressed as one shift of the
    reachability bitset: bit x of ``reach`` is set iff ``cells[x]`` is set.

    With ``limit`` only sums up to ``limit`` are tracked. A cell only ever
    links to a smaller sum, so the cells kept are exactly those of the
    unbounded table.
    """
    total = 0
    for s in imbalances:
        if s < 1:
            raise ValueError(f"imbalances must be positive, got {s}")
        total += s
    if limit is not None:
        if limit < 0:
            raise ValueError(f"limit must be >= 0, got {limit}")
        total = min(total, limit)
    cells: List[Cell] = [None] * (total + 1)
    cells[0] = (0, 0)
    full = (1 << (total + 1)) - 1
    reach = 1
    # 这些取值在当前 reach 上已经产生不了新和，直到 reach 再变化
    stalled: Set[int] = set()
    for i, s in enumerate(imbalances, start=1):
        if reach == full:
            break
        if s in stalled:
            continue
        fresh = (reach << s) & (full ^ reach)
        if not fresh:
            stalled.add(s)
            continue
        stalled.clear()
        reach |= fresh
        link = (i, s)
        while fresh:
            low = fresh & -fresh
            cells[low.bit_length() - 1] = link
            fresh ^= low
    return SubsetSumTable(tuple(cells))


def adjusted_targets(
    components: Sequence[BipartitionComponent], constraint: CardinalityConstraint
) -> AdjustedTargets:
    shared = sum(min(len(c.P), len(c.Q)) for c in components)
    return AdjustedTargets(constraint.c1 - shared, constraint.c2 - shared)


def solve_2colcc(
    graph: ThresholdGraph, constraint: CardinalityConstraint
) -> Optional[Assignment]:
    """Proper 2-coloring with exactly c1 vertices of color 1, or ``None`` (INFEASIBLE)."""
    if constraint.total != graph.vertex_count:
        raise CardinalityMismatch(
            f"c1 + c2 = {constraint.total} does not match |V| = {graph.vertex_count}"
        )
    components = bipartition_components(graph)
    if components is None:
        return None

    shared = 0
    imbalances: List[int] = []
    for component in components:
        if component.imbalance:
            imbalances.append(component.imbalance)
        shared += min(len(component.P), len(component.Q))
    c1_prime = constraint.c1 - shared
    if not 0 <= c1_prime <= sum(imbalances):
        return None
    table = subset_sum_table(imbalances, limit=c1_prime)
    if not table.reachable(c1_prime):
        return None
    chosen = {i for i, _ in table.backtrack(c1_prime)}

    colors = [0] * graph.vertex_count
    weighted_index = 0
    for component in components:
        if component.imbalance == 0:
            larger, smaller, larger_color = component.P, component.Q, 1
        else:
            weighted_index += 1
            if len(component.P) >= len(component.Q):
                larger, smaller = component.P, component.Q
            else:
                larger, smaller = component.Q, component.P
            larger_color = 1 if weighted_index in chosen else 2
        for x in larger:
            colors[x] = larger_color
        smaller_color = 3 - larger_color
        for x in smaller:
            colors[x] = smaller_color
    return Assignment(tuple(colors))
