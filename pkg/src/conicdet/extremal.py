"""Stationary point of log det at equal cone orders, its Hessian and the
threshold area where it turns from a minimum into a maximum.

The determinant is viewed as a function of (beta_1, beta_3) with the degree
|beta| and the area S held fixed, so beta_2 = |beta| - beta_1 - beta_3.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .determinant import SurfaceSpec, logdet
from .divisor import ConeDivisor
from .errors import DomainError, ValidationError
from .numdiff import richardson_derivative, richardson_second_derivative
from .specfun import CONSTANTS, c_of_beta_second_derivative
from .uniformization import phi_big, phi_big_partials

__all__ = [
    "Classification",
    "HessianAtSymmetric",
    "gradient_at",
    "hessian_symmetric",
    "hessian_fd",
    "threshold_area",
    "classify",
    "GRADIENT_TOL",
    "DEGENERACY_TOL",
]

GRADIENT_TOL = 1e-6
DEGENERACY_TOL = 1e-9
SYMMETRY_TOL = 1e-9


class Classification(enum.Enum):
    MINIMUM = "Minimum"
    MAXIMUM = "Maximum"
    SADDLE = "Saddle"
    DEGENERATE = "Degenerate"
    NOT_STATIONARY = "NotStationary"


@dataclass(frozen=True)
class HessianAtSymmetric:
    """Hessian [[d11, d13], [d13, d11]] at beta_j = |beta|/3."""

    abs_beta: float
    area: float
    d11: float
    d13: float
    s0: float

    @property
    def eigenvalues(self) -> Tuple[float, float]:
        """Eigenvalues along (1, 1) and (1, -1)."""
        return (self.d11 + self.d13, self.d11 - self.d13)


def _check_degree(abs_beta):
    s = float(abs_beta)
    if not -3.0 < s < 0.0:
        raise DomainError(f"|beta| must lie in (-3, 0), got {s!r}")
    return s


def _logdet_on_slice(s, area):
    def f(b1, b3):
        return logdet(SurfaceSpec(ConeDivisor((b1, s - b1 - b3, b3)), area)).log_det

    return f


def _stencil_check(beta, step):
    s = math.fsum(beta)
    b1, _, b3 = beta
    for d1, d3 in ((step, step), (step, -step), (-step, step), (-step, -step)):
        try:
            ConeDivisor((b1 + d1, s - b1 - b3 - d1 - d3, b3 + d3))
        except ValidationError as exc:
            raise DomainError(f"difference stencil leaves the valid divisor set: {exc}") from exc


def gradient_at(beta, area: float = 1.0, step: float = 1e-5, levels: int = 1) -> np.ndarray:
    """Central-difference gradient of log det in (beta_1, beta_3) at fixed |beta| and S."""
    beta = ConeDivisor(tuple(beta)).beta
    _stencil_check(beta, step)
    f = _logdet_on_slice(math.fsum(beta), area)
    b1, _, b3 = beta
    g1 = richardson_derivative(lambda x: f(x, b3), b1, step, levels)
    g3 = richardson_derivative(lambda x: f(b1, x), b3, step, levels)
    return np.array([g1, g3])


def hessian_fd(beta, area: float = 1.0, step: float = 2e-3, levels: int = 2) -> np.ndarray:
    """Finite-difference Hessian of log det in (beta_1, beta_3) at fixed |beta| and S."""
    beta = ConeDivisor(tuple(beta)).beta
    _stencil_check(beta, 2.0 * step)
    f = _logdet_on_slice(math.fsum(beta), area)
    b1, _, b3 = beta
    h11 = richardson_second_derivative(lambda x: f(x, b3), b1, step, levels)
    h33 = richardson_second_derivative(lambda x: f(b1, x), b3, step, levels)

    def mixed(h):
        return (f(b1 + h, b3 + h) - f(b1 + h, b3 - h) - f(b1 - h, b3 + h) + f(b1 - h, b3 - h)) / (4.0 * h * h)

    vals = [mixed(step / 2**k) for k in range(levels + 1)]
    for k in range(levels):
        factor = 4.0 ** (k + 1)
        vals = [(factor * vals[i + 1] - vals[i]) / (factor - 1.0) for i in range(len(vals) - 1)]
    h13 = vals[-1]
    return np.array([[h11, h13], [h13, h33]])


def _d11_terms(s, area):
    """Summands of the pure second derivative at beta_j = s/3."""
    b = s / 3.0
    sym = (b, b, b)
    phi = phi_big(sym)
    parts = phi_big_partials(sym, hold_degree=True)
    t = s + 3.0
    return [
        -9.0 / t**3 * (2.0 * CONSTANTS.log2 + math.log(area) + 2.0 * phi),
        6.0 / t**2 * parts.d1_minus_d2,
        (t / 3.0 - 3.0 / t) / 3.0 * parts.hessian_diag_sum,
        -2.0 * c_of_beta_second_derivative(b),
    ]


def threshold_area(abs_beta: float) -> float:
    """The area S0 at which d11 changes sign; d11 > 0 for S < S0.

    d11 is affine in log S with slope -9 (|beta| + 3)^-3, so
    log S0 = (|beta| + 3)^3 / 9 * d11(|beta|, S = 1).
    """
    s = _check_degree(abs_beta)
    return math.exp((s + 3.0) ** 3 / 9.0 * math.fsum(_d11_terms(s, 1.0)))


def hessian_symmetric(abs_beta: float, area: float = 1.0) -> HessianAtSymmetric:
    """Closed-form Hessian of log det at the symmetric point beta_j = |beta|/3."""
    s = _check_degree(abs_beta)
    if not area > 0:
        raise DomainError("area must be positive")
    terms = _d11_terms(s, area)
    return HessianAtSymmetric(
        abs_beta=s,
        area=float(area),
        d11=math.fsum(terms),
        d13=math.fsum(0.5 * v for v in terms),
        s0=threshold_area(s),
    )


def _classify_eigenvalues(eigs) -> Classification:
    if any(abs(e) <= DEGENERACY_TOL for e in eigs):
        return Classification.DEGENERATE
    if all(e > 0 for e in eigs):
        return Classification.MINIMUM
    if all(e < 0 for e in eigs):
        return Classification.MAXIMUM
    return Classification.SADDLE


def classify(beta, area: float = 1.0) -> Classification:
    """Type of the critical point of log det at ``beta`` (fixed |beta| and S)."""
    beta = ConeDivisor(tuple(beta)).beta
    if np.linalg.norm(gradient_at(beta, area)) > GRADIENT_TOL:
        return Classification.NOT_STATIONARY
    s = math.fsum(beta)
    if max(abs(bj - s / 3.0) for bj in beta) <= SYMMETRY_TOL:
        eigs = hessian_symmetric(s, area).eigenvalues
    else:
        eigs = tuple(np.linalg.eigvalsh(hessian_fd(beta, area)))
    return _classify_eigenvalues(eigs)
