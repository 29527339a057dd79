"""
Оценки роста по таблице γ(r).
"""
import math

import numpy as np

from growth.ball import GrowthTable
from streaming.errors import InvalidArgumentError


def exponential_slope(table: GrowthTable, start: int = 1) -> float:
    """Наклон прямой МНК для log₂ γ(r) по r ∈ [start, R]"""
    radii = np.arange(start, table.radius + 1)
    if len(radii) < 2:
        raise InvalidArgumentError("Для оценки наклона нужно хотя бы два радиуса")
    logs = np.log2(np.array(table.gamma[start:], dtype=float))
    slope, _ = np.polyfit(radii, logs, 1)
    return float(slope)


def polynomial_constant(table: GrowthTable, degree: int, start: int = 1) -> float:
    """Наименьшее C с γ(r) ≤ C·r^degree на r ∈ [start, R]"""
    if start < 1:
        raise InvalidArgumentError("Полиномиальная оценка считается с r ≥ 1")
    if table.radius < start:
        raise InvalidArgumentError(f"Таблица короче радиуса {start}")
    return max(g / r ** degree for r, g in enumerate(table.gamma) if r >= start)


def polynomial_degree(table: GrowthTable, start: int = 2) -> float:
    """Наклон log γ(r) по log r — оценка степени полиномиального роста"""
    radii = [r for r in range(start, table.radius + 1)]
    if len(radii) < 2:
        raise InvalidArgumentError("Для оценки степени нужно хотя бы два радиуса")
    xs = np.log(np.array(radii, dtype=float))
    ys = np.array([math.log(table.gamma[r]) for r in radii])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
