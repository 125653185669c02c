"""log det of the Friedrichs Laplacian on a sphere with three conical points."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .divisor import ConeDivisor, GeometryClass, as_divisor
from .errors import DomainError, ValidationError
from .liouville import ActionBreakdown, action_at_points, action_breakdown, h_functional
from .numdiff import richardson_limit
from .quadrature import sphere_integrals
from .specfun import CONSTANTS, ZETA_PRIME_M1, barnes_zeta_prime0, c_of_beta
from .uniformization import phi_coeffs, phi_infinity

__all__ = [
    "Path",
    "SurfaceSpec",
    "DetResult",
    "zeta0",
    "zeta0_flat",
    "logdet_unit",
    "logdet",
    "logdet_quadrature",
    "logdet_flat",
    "flat_scale_squared",
    "logdet_spindle",
    "logdet_round_sphere",
    "sphere_limit",
    "spindle_limit",
    "LIMIT_EPS",
]

LOG2 = CONSTANTS.log2
LOG_PI = CONSTANTS.log_pi
LIMIT_EPS = (1e-2, 1e-3, 1e-4)


class Path(enum.Enum):
    CLOSED_FORM = "closed"
    QUADRATURE_ANOMALY = "quadrature"


@dataclass(frozen=True)
class SurfaceSpec:
    """A cone divisor together with the total area S of the metric."""

    divisor: ConeDivisor
    area: float = 1.0

    def __post_init__(self):
        if not isinstance(self.divisor, ConeDivisor):
            object.__setattr__(self, "divisor", as_divisor(self.divisor))
        area = float(self.area)
        if not (math.isfinite(area) and area > 0):
            raise ValidationError(f"area must be positive and finite, got {area!r}", "area must be positive")
        object.__setattr__(self, "area", area)

    @property
    def curvature(self) -> float:
        """K = 2 pi (|beta| + 2) / S (Gauss-Bonnet)."""
        return 2.0 * math.pi * (self.divisor.degree + 2.0) / self.area

    @property
    def geometry(self) -> GeometryClass:
        return self.divisor.geometry


@dataclass(frozen=True)
class DetResult:
    """A log det evaluation; ``log_det`` is the exact fsum of ``terms``."""

    log_det: float
    zeta0: float
    path: Path
    terms: Tuple[Tuple[str, float], ...]
    breakdown: Optional[ActionBreakdown] = None
    c_terms: Tuple[float, float, float] = field(default=(0.0, 0.0, 0.0))

    @classmethod
    def assemble(cls, terms, zeta0, path, breakdown=None, c_terms=(0.0, 0.0, 0.0)):
        terms = tuple((str(k), float(v)) for k, v in terms)
        total = math.fsum(v for _, v in terms)
        if not math.isfinite(total):
            raise DomainError("log det is not finite")
        return cls(total, zeta0, path, terms, breakdown, tuple(c_terms))

    def resum(self) -> float:
        return math.fsum(v for _, v in self.terms)

    def term(self, label: str) -> float:
        return dict(self.terms)[label]


# -- zeta(0) --------------------------------------------------------------


def _orders(beta) -> Tuple[float, float, float]:
    if isinstance(beta, ConeDivisor):
        return beta.beta
    return as_divisor(beta).beta


def zeta0(beta) -> float:
    """zeta_beta(0) = (|beta| + 2)/6 - (1/12) sum (beta_j + 1 - 1/(beta_j + 1)) - 1."""
    b = _orders(beta)
    s = math.fsum(b)
    return math.fsum([(s + 2.0) / 6.0, -math.fsum(bj + 1.0 - 1.0 / (bj + 1.0) for bj in b) / 12.0, -1.0])


def zeta0_flat(beta) -> float:
    """zeta_beta(0) on the flat line: -13/12 + (1/12) sum 1/(beta_j + 1)."""
    b = _orders(beta)
    return -13.0 / 12.0 + math.fsum(1.0 / (bj + 1.0) for bj in b) / 12.0


# -- closed form ----------------------------------------------------------


def _constant_terms():
    return [
        ("log2", -4.0 / 3.0 * LOG2),
        ("riemann", -4.0 * ZETA_PRIME_M1),
        ("log_pi", -LOG_PI),
    ]


def _c_terms(b):
    return tuple(c_of_beta(bj) for bj in b)


def logdet_unit(beta, points: Optional[Sequence[complex]] = None) -> DetResult:
    """log det of the unit-area metric, from the explicit Liouville action.

    ``points`` (or the points carried by a :class:`ConeDivisor`) select the
    normalisation of the marked points; the result does not depend on it.
    """
    div = as_divisor(beta)
    if points is not None:
        div = div.with_points(points)
    b = div.beta
    s = div.degree
    if div.is_standard:
        brk = action_breakdown(b)
        action, log_h = brk.action, brk.log_h
    else:
        action = action_at_points(b, div.points)
        log_h = h_functional(b, div.points)
        brk = ActionBreakdown(action=action, log_h=log_h, classical=action / (4.0 * math.pi), terms=())
    cs = _c_terms(b)
    terms = [
        ("degree", -(s + 1.0) / 6.0),
        ("action", -action / (12.0 * math.pi)),
        ("log_h", log_h / 12.0),
    ]
    terms += [(f"C[{j}]", -c) for j, c in enumerate(cs, start=1)]
    terms += _constant_terms()
    return DetResult.assemble(terms, zeta0(b), Path.CLOSED_FORM, brk, cs)


def _rescale(result: DetResult, area: float) -> DetResult:
    if area == 1.0:
        return result
    terms = list(result.terms) + [("area", -result.zeta0 * math.log(area))]
    return DetResult.assemble(terms, result.zeta0, result.path, result.breakdown, result.c_terms)


def logdet(spec, path: Path = Path.CLOSED_FORM) -> DetResult:
    """log det for a divisor and area: logdet_unit - zeta(0) log S.

    ``spec`` is a :class:`SurfaceSpec`, or a divisor (area 1).
    """
    if not isinstance(spec, SurfaceSpec):
        spec = SurfaceSpec(as_divisor(spec), 1.0)
    path = Path(path)
    if path is Path.CLOSED_FORM:
        unit = logdet_unit(spec.divisor)
    else:
        unit = logdet_quadrature(spec.divisor)
    return _rescale(unit, spec.area)


# -- quadrature path ------------------------------------------------------


def logdet_quadrature(beta, resolution: int = 2) -> DetResult:
    """log det of the unit-area metric from the anomaly formula, with the
    integral of phi e^{2 phi} evaluated by quadrature.

    The integral has coefficient (|beta| + 2)/6 and is skipped on the flat line.
    Marked points are normalised to (-1, 0, 1).
    """
    b = as_divisor(beta).beta
    div = ConeDivisor(b)
    s = div.degree
    if div.geometry is GeometryClass.FLAT:
        integral = 0.0
    else:
        integral = -(s + 2.0) / 6.0 * sphere_integrals(div, resolution).phi_weighted
    coeffs = phi_coeffs(b)
    cs = _c_terms(b)
    terms = [
        ("integral", integral),
        ("phi_infinity", -phi_infinity(b) / 3.0),
        ("phi_j", math.fsum(bj / (bj + 1.0) * pj for bj, pj in zip(b, coeffs)) / 6.0),
    ]
    terms += [(f"C[{j}]", -c) for j, c in enumerate(cs, start=1)]
    terms += _constant_terms()
    terms.append(("one_sixth", 1.0 / 6.0))
    return DetResult.assemble(terms, zeta0(b), Path.QUADRATURE_ANOMALY, None, cs)


# -- flat line ------------------------------------------------------------


def _flat_orders(beta1, beta3):
    beta2 = -2.0 - beta1 - beta3
    b = (float(beta1), float(beta2), float(beta3))
    for name, v in zip(("beta_1", "implied beta_2", "beta_3"), b):
        if not -1.0 < v < 0.0:
            raise ValidationError(f"order must lie in (-1,0): {name} = {v!r}", "order must lie in (-1,0)")
    return b


def flat_scale_squared(beta1: float, beta3: float) -> float:
    """log of the scale factor C^2 making the flat envelope metric unit area."""
    b = _flat_orders(beta1, beta3)
    return math.fsum(
        [(2.0 * b[1] + 2.0) * LOG2, -LOG_PI]
        + [math.lgamma(-bj) - math.lgamma(bj + 1.0) for bj in b]
    )


def logdet_flat(beta1: float, beta3: float, area: float = 1.0) -> float:
    """log det for the flat metric (two glued Euclidean triangles) of area S."""
    if not area > 0:
        raise ValidationError("area must be positive", "area must be positive")
    b = _flat_orders(beta1, beta3)
    log_c2 = flat_scale_squared(beta1, beta3)
    z0 = zeta0_flat(b)
    b1, _, b3 = b
    terms = [(b1 * b3 / (b1 + 1.0) + b1 * b3 / (b3 + 1.0)) * LOG2 / 6.0]
    for bj in b:
        terms += [
            -2.0 * barnes_zeta_prime0(bj + 1.0),
            bj * bj / (6.0 * (bj + 1.0)) * LOG2,
            -0.5 * math.log1p(bj),
        ]
    terms += [-log_c2, -z0 * (log_c2 + math.log(area)), -4.0 / 3.0 * LOG2, 2.0 * ZETA_PRIME_M1, -LOG_PI]
    return math.fsum(terms)


# -- two-point limits -----------------------------------------------------


def logdet_spindle(b: float) -> float:
    """log det of the unit-area spindle with two antipodal cone points of order b."""
    b = float(b)
    if not -1.0 < b < 0.0:
        raise DomainError(f"spindle order must lie in (-1,0), got {b!r}")
    a = b + 1.0
    return math.fsum([
        0.5 * a,
        -(a + 1.0 / a) / 6.0 * math.log(a / (4.0 * math.pi)),
        -4.0 * barnes_zeta_prime0(a),
        -math.log(4.0 * math.pi * a),
    ])


def logdet_round_sphere() -> float:
    """log det on the round sphere of area 4 pi: 1/2 - 4 zeta_R'(-1)."""
    return 0.5 - 4.0 * ZETA_PRIME_M1


def sphere_limit(area: float = 4.0 * math.pi, eps: Sequence[float] = LIMIT_EPS) -> float:
    """Extrapolate logdet at beta_j = -eps to eps -> 0."""
    return richardson_limit(lambda e: logdet(SurfaceSpec(ConeDivisor((-e, -e, -e)), area)).log_det, eps)


def spindle_limit(b: float, eps: Sequence[float] = LIMIT_EPS) -> float:
    """Extrapolate logdet_unit at (b, -eps, b) to eps -> 0."""
    return richardson_limit(lambda e: logdet_unit((b, -e, b)).log_det, eps)
