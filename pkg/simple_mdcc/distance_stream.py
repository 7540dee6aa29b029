"""Pairwise squared distances, either fully sorted or as the n smallest.

Pairs are enumerated row by row in ``(u, v)`` order with ``u < v``. Each pair is
addressed by its condensed index ``row_start[u] + (v - u - 1)`` so that
sorted lists only carry one float and one integer array.
"""

from __future__ import annotations

import heapq
import math
from collections.abc import Sequence
from typing import Iterator, List, Tuple, Union, overload

import numpy as np

from .models import DistanceEntry, PointSet, squared_distances
from .utils.log import logger


def _row_starts(n: int) -> np.ndarray:
    u = np.arange(n, dtype=np.int64)
    return u * n - u * (u + 1) // 2


def iter_distance_rows(points: PointSet) -> Iterator[Tuple[int, int, np.ndarray]]:
    """Yield ``(u, condensed_offset, d2 to items u+1..n-1)`` for every row."""
    data = points.data
    n = points.n
    base = 0
    for u in range(n - 1):
        yield u, base, squared_distances(data, u, slice(u + 1, n))
        base += n - u - 1


class SortedDistanceList(Sequence[DistanceEntry]):
    """Ascending ``DistanceEntry`` sequence backed by numpy arrays."""

    def __init__(self, d2: np.ndarray, keys: np.ndarray, n: int) -> None:
        self._d2 = d2
        self._keys = keys
        self._n = n
        self._row_start = _row_starts(n)

    @property
    def n(self) -> int:
        return self._n

    def _decode(self, keys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        u = np.searchsorted(self._row_start, keys, side="right") - 1
        v = keys - self._row_start[u] + u + 1
        return u, v

    def __len__(self) -> int:
        return len(self._d2)

    @overload
    def __getitem__(self, index: int) -> DistanceEntry: ...

    @overload
    def __getitem__(self, index: slice) -> "SortedDistanceList": ...

    def __getitem__(
        self, index: Union[int, slice]
    ) -> Union[DistanceEntry, "SortedDistanceList"]:
        if isinstance(index, slice):
            return SortedDistanceList(self._d2[index], self._keys[index], self._n)
        key = self._keys[index]
        u, v = self._decode(np.asarray([key]))
        return DistanceEntry(float(self._d2[index]), int(u[0]), int(v[0]))

    def __iter__(self) -> Iterator[DistanceEntry]:
        for batch in self.batches():
            yield from batch

    def batches(self, chunk: int = 4096) -> Iterator[List[DistanceEntry]]:
        """Yield runs of entries that share one exact d2 value, in ascending order.

        Pairs are decoded lazily in chunks, so a sweep that stops early never
        touches the tail of a large list.
        """
        total = len(self._d2)
        batch: List[DistanceEntry] = []
        current = None
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            u, v = self._decode(self._keys[start:stop])
            for value, a, b in zip(self._d2[start:stop].tolist(), u.tolist(), v.tolist()):
                if batch and value != current:
                    yield batch
                    batch = []
                current = value
                batch.append(DistanceEntry(value, a, b))
        if batch:
            yield batch


def all_distances_sorted(points: PointSet) -> SortedDistanceList:
    """All n(n-1)/2 pairs ascending by squared distance, ties by (u, v)."""
    n = points.n
    d2 = np.empty(points.pair_count, dtype=np.float64)
    for _, base, row in iter_distance_rows(points):
        d2[base : base + len(row)] = row
    # 稳定排序：相同距离按行优先 (u, v) 顺序排列
    keys = np.argsort(d2, kind="stable")
    d2 = d2[keys]
    logger.debug(f"simple-mdcc: 全量排序完成 (n={n}, pairs={len(d2)})")
    return SortedDistanceList(d2, keys.astype(np.int64, copy=False), n)


def smallest_n_distances(points: PointSet) -> SortedDistanceList:
    """The n smallest squared distances via a bounded max-heap over the pair stream.

    An entry replaces the current maximum only when it is strictly smaller, so
    pairs tied with the final maximum may be missing. Memory stays O(n).
    """
    n = points.n
    capacity = n
    # heapq 是最小堆，存 (-d2, -key) 让堆顶成为最大值；并列时先淘汰 key 最大的
    heap: List[Tuple[float, int]] = []
    for _, base, row in iter_distance_rows(points):
        start = 0
        if len(heap) < capacity:
            take = min(capacity - len(heap), len(row))
            for offset, value in enumerate(row[:take].tolist()):
                heapq.heappush(heap, (-value, -(base + offset)))
            start = take
        if start >= len(row):
            continue
        tail = row[start:]
        for offset in (np.flatnonzero(tail < -heap[0][0]) + start).tolist():
            value = float(row[offset])
            if value < -heap[0][0]:
                heapq.heapreplace(heap, (-value, -(base + offset)))

    heap.sort(key=lambda item: (-item[0], -item[1]))
    d2 = np.fromiter((-item[0] for item in heap), dtype=np.float64, count=len(heap))
    keys = np.fromiter((-item[1] for item in heap), dtype=np.int64, count=len(heap))
    logger.debug(
        f"simple-mdcc: 最小 {capacity} 个距离已选出 (kept={len(heap)}, pairs={points.pair_count})"
    )
    return SortedDistanceList(d2, keys, n)


def min_pairwise_squared(points: PointSet) -> float:
    """Smallest squared distance over all pairs (inf when n < 2), O(n) memory."""
    best = math.inf
    for _, _, row in iter_distance_rows(points):
        best = min(best, float(row.min()))
    return best
