from __future__ import annotations

import math

INF_LITERAL = "inf"


def format_dispersion(value: float) -> str:
    """17 位有效数字，保证 double 往返无损；无穷写作 "inf"。"""
    if math.isinf(value):
        return INF_LITERAL
    return format(value, ".17g")
