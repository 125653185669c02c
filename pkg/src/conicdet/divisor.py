"""Cone divisors on the Riemann sphere and their geometry class."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Tuple

from .errors import ValidationError

__all__ = ["GeometryClass", "ConeDivisor", "FLAT_TOL", "DEFAULT_POINTS", "as_divisor"]

FLAT_TOL = 1e-12
DEFAULT_POINTS = (-1.0 + 0j, 0j, 1.0 + 0j)

ORDER_RANGE = "order must lie in (-1,0)"
TROYANOV = "Troyanov condition"
DISTINCT_POINTS = "marked points must be distinct and finite"


class GeometryClass(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    FLAT = "flat"
    SPHERICAL = "spherical"

    @classmethod
    def from_degree(cls, degree: float) -> "GeometryClass":
        if abs(degree + 2.0) <= FLAT_TOL:
            return cls.FLAT
        return cls.HYPERBOLIC if degree < -2.0 else cls.SPHERICAL


@dataclass(frozen=True)
class ConeDivisor:
    """Three cone orders beta_j in (-1, 0) placed at distinct marked points.

    The cone angle at ``points[j]`` is 2*pi*(beta_j + 1).
    """

    beta: Tuple[float, float, float]
    points: Tuple[complex, complex, complex] = DEFAULT_POINTS

    def __post_init__(self):
        beta = tuple(float(b) for b in self.beta)
        points = tuple(complex(p) for p in self.points)
        if len(beta) != 3 or len(points) != 3:
            raise ValidationError("a divisor needs exactly three orders and three points", ORDER_RANGE)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "points", points)
        for j, b in enumerate(beta, start=1):
            if not (math.isfinite(b) and -1.0 < b < 0.0):
                raise ValidationError(f"{ORDER_RANGE}: beta_{j} = {b!r}", ORDER_RANGE)
        for p in points:
            if not (math.isfinite(p.real) and math.isfinite(p.imag)):
                raise ValidationError(DISTINCT_POINTS, DISTINCT_POINTS)
        for i in range(3):
            for k in range(i + 1, 3):
                if points[i] == points[k]:
                    raise ValidationError(DISTINCT_POINTS, DISTINCT_POINTS)
        if self.geometry is GeometryClass.SPHERICAL:
            half = 0.5 * self.degree
            for j, b in enumerate(beta, start=1):
                if not b - half > 0.0:
                    raise ValidationError(
                        f"{TROYANOV} violated: beta_{j} - |beta|/2 = {b - half!r} must be positive",
                        TROYANOV,
                    )

    @property
    def degree(self) -> float:
        return math.fsum(self.beta)

    @property
    def geometry(self) -> GeometryClass:
        return GeometryClass.from_degree(self.degree)

    @property
    def curvature(self) -> float:
        """Gaussian curvature of the unit-area metric."""
        return 2.0 * math.pi * (self.degree + 2.0)

    @property
    def is_standard(self) -> bool:
        return self.points == DEFAULT_POINTS

    def with_points(self, points) -> "ConeDivisor":
        return ConeDivisor(self.beta, tuple(points))

    def swapped(self, i: int, k: int) -> "ConeDivisor":
        """Relabel: exchange orders and points of singularities i and k."""
        beta, pts = list(self.beta), list(self.points)
        beta[i], beta[k] = beta[k], beta[i]
        pts[i], pts[k] = pts[k], pts[i]
        return ConeDivisor(tuple(beta), tuple(pts))


def as_divisor(beta) -> ConeDivisor:
    if isinstance(beta, ConeDivisor):
        return beta
    return ConeDivisor(tuple(beta))
