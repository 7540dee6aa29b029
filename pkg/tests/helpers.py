from __future__ import annotations

import math

import numpy as np

from simple_mdcc.distance_stream import SortedDistanceList
from simple_mdcc.models import PointSet
from simple_mdcc.utils.numfmt import INF_LITERAL


def line_points(*xs: float) -> PointSet:
    return PointSet(np.asarray(xs, dtype=np.float64).reshape(-1, 1))


def grid_points(side: int) -> PointSet:
    return PointSet(
        np.asarray([(x, y) for x in range(side) for y in range(side)], dtype=np.float64)
    )


def normal_points(n: int, m: int, seed: int) -> PointSet:
    return PointSet(np.random.default_rng(seed).standard_normal((n, m)))


def d2_values(distances: SortedDistanceList) -> np.ndarray:
    return np.fromiter((entry.d2 for entry in distances), dtype=np.float64, count=len(distances))


def parse_dispersion(text: str) -> float:
    text = text.strip()
    if text.lower() == INF_LITERAL:
        return math.inf
    return float(text)
