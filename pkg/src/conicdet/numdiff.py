"""Finite differences and Richardson extrapolation."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

__all__ = [
    "richardson_table",
    "richardson_derivative",
    "richardson_second_derivative",
    "richardson_limit",
]


def richardson_table(values: Sequence[float], ratio: float, orders: Sequence[float]) -> float:
    """Eliminate error terms h^p for each p in ``orders``.

    ``values[k]`` is an approximation computed with step h / ratio**k.
    """
    row = [float(v) for v in values]
    for p in orders:
        if len(row) < 2:
            break
        factor = ratio**p
        row = [(factor * row[k + 1] - row[k]) / (factor - 1.0) for k in range(len(row) - 1)]
    return row[-1]


def richardson_derivative(f: Callable[[float], float], x: float, step: float, levels: int = 1) -> float:
    """First derivative by central differences with ``levels`` Richardson steps."""
    vals = []
    for k in range(levels + 1):
        h = step / 2**k
        vals.append((f(x + h) - f(x - h)) / (2.0 * h))
    return richardson_table(vals, 2.0, [2 * (i + 1) for i in range(levels)])


def richardson_second_derivative(f: Callable[[float], float], x: float, step: float, levels: int = 1) -> float:
    f0 = f(x)
    vals = []
    for k in range(levels + 1):
        h = step / 2**k
        vals.append((f(x + h) - 2.0 * f0 + f(x - h)) / (h * h))
    return richardson_table(vals, 2.0, [2 * (i + 1) for i in range(levels)])


def richardson_limit(
    f: Callable[[float], float],
    eps: Sequence[float] = (1e-2, 1e-3, 1e-4),
    orders: Sequence[float] = (1, 2),
) -> float:
    """Extrapolate f(eps) to eps -> 0 from a geometric sequence of eps values.

    The error is assumed to expand in the powers listed in ``orders``.
    """
    eps = np.asarray(eps, dtype=float)
    ratio = eps[0] / eps[1]
    if not np.allclose(eps[:-1] / eps[1:], ratio, rtol=1e-12):
        raise ValueError("eps must form a geometric sequence")
    return richardson_table([f(e) for e in eps], ratio, orders)
