from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence, Tuple, Union

import numpy as np

from .exceptions import CardinalityMismatch, DimensionMismatch, NonFiniteFeature

INFINITE = math.inf
GROUP_LABELS = (1, 2)


class SolveMode(str, Enum):
    FULL = "full"
    HEAP = "heap"
    AUTO = "auto"


class ResultVariant(str, Enum):
    FULL_SORT = "FullSort"
    HEAP_THEN_FALLBACK = "HeapThenFallback"
    HEAP_ONLY = "HeapOnly"


@dataclass(frozen=True, eq=False)
class PointSet:
    """n items × m finite features, stored as a read-only float64 matrix."""

    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise DimensionMismatch(
                f"PointSet 需要形如 (n>=1, m>=1) 的矩阵，收到 shape={data.shape}"
            )
        if not np.isfinite(data).all():
            row, col = np.argwhere(~np.isfinite(data))[0]
            raise NonFiniteFeature(
                f"item {int(row)} feature {int(col)} is not finite ({data[row, col]!r})"
            )
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "PointSet":
        rows = [list(row) for row in rows]
        if not rows:
            raise DimensionMismatch("PointSet 至少需要 1 个点")
        width = len(rows[0])
        for index, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatch(
                    f"item {index} has {len(row)} features, expected {width}"
                )
        return cls(np.asarray(rows, dtype=np.float64).reshape(len(rows), width))

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    @property
    def m(self) -> int:
        return int(self.data.shape[1])

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class CardinalityConstraint:
    c1: int
    c2: int

    def __post_init__(self) -> None:
        if self.c1 < 0 or self.c2 < 0:
            raise CardinalityMismatch(
                f"cardinalities must be non-negative, got c1={self.c1}, c2={self.c2}"
            )

    @classmethod
    def balanced(cls, n: int) -> "CardinalityConstraint":
        if n % 2:
            raise CardinalityMismatch(f"balanced constraint requires even n, got n={n}")
        return cls(n // 2, n // 2)

    @property
    def total(self) -> int:
        return self.c1 + self.c2

    def swapped(self) -> "CardinalityConstraint":
        return CardinalityConstraint(self.c2, self.c1)


class DistanceEntry(NamedTuple):
    """One pair of the threshold sweep; ``u < v`` and ``d2`` is the squared distance."""

    d2: float
    u: int
    v: int


@dataclass(frozen=True)
class Assignment:
    groups: Tuple[int, ...]

    def __post_init__(self) -> None:
        groups = tuple(int(g) for g in self.groups)
        for index, label in enumerate(groups):
            if label not in GROUP_LABELS:
                raise ValueError(f"item {index} has label {label}, expected 1 or 2")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def canonical(cls, constraint: CardinalityConstraint) -> "Assignment":
        """First c1 items in group 1, the rest in group 2."""
        return cls((1,) * constraint.c1 + (2,) * constraint.c2)

    def __len__(self) -> int:
        return len(self.groups)

    def count(self, label: int) -> int:
        return self.groups.count(label)

    def respects(self, constraint: CardinalityConstraint) -> bool:
        return (
            len(self.groups) == constraint.total
            and self.count(1) == constraint.c1
            and self.count(2) == constraint.c2
        )

    def swapped(self) -> "Assignment":
        return Assignment(tuple(3 - g for g in self.groups))


@dataclass(frozen=True)
class DispersionResult:
    dispersion: float
    assignment: Assignment
    iterations_used: int
    variant: ResultVariant
    fallback_triggered: bool = False

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.dispersion)


PointsLike = Union[PointSet, Sequence[Sequence[float]], np.ndarray]


def as_point_set(points: PointsLike) -> PointSet:
    if isinstance(points, PointSet):
        return points
    if isinstance(points, np.ndarray):
        return PointSet(points)
    return PointSet.from_rows(points)


def validate_instance(
    points: PointsLike, constraint: CardinalityConstraint
) -> PointSet:
    """Check both types' invariants and ``c1 + c2 == n``; returns the PointSet."""
    point_set = as_point_set(points)
    if constraint.total != point_set.n:
        raise CardinalityMismatch(
            f"c1 + c2 = {constraint.c1} + {constraint.c2} = {constraint.total} "
            f"does not match n = {point_set.n}"
        )
    return point_set


def squared_distances(data: np.ndarray, u: int, others: Union[slice, np.ndarray]) -> np.ndarray:
    """Squared distances from item ``u`` to ``data[others]``.

    Features are accumulated in index order 0..m-1 so every pair yields the
    same bits no matter which routine computes it.
    """
    diff = data[others] - data[u]
    d2 = diff[:, 0] * diff[:, 0]
    for k in range(1, diff.shape[1]):
        d2 += diff[:, k] * diff[:, k]
    return d2


def dispersion_of(points: PointsLike, assignment: Assignment) -> float:
    """Minimum Euclidean distance over same-group pairs, INFINITE if there is none."""
    point_set = as_point_set(points)
    if len(assignment) != point_set.n:
        raise DimensionMismatch(
            f"assignment has {len(assignment)} labels for {point_set.n} items"
        )
    labels = np.asarray(assignment.groups)
    best = INFINITE
    for label in GROUP_LABELS:
        members = np.flatnonzero(labels == label)
        for position in range(len(members) - 1):
            d2 = squared_distances(point_set.data, members[position], members[position + 1:])
            best = min(best, float(d2.min()))
    return math.sqrt(best) if not math.isinf(best) else INFINITE
