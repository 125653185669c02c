"""Spectral determinants of Laplacians on spheres with three conical points.

The main entry points are :func:`logdet` (closed form for any divisor and
area), :func:`logdet_quadrature` (independent anomaly-formula route) and the
stationary-point analysis in :mod:`conicdet.extremal`.
"""

from .determinant import (
    DetResult,
    Path,
    SurfaceSpec,
    logdet,
    logdet_flat,
    logdet_quadrature,
    logdet_round_sphere,
    logdet_spindle,
    logdet_unit,
    zeta0,
    zeta0_flat,
)
from .divisor import ConeDivisor, GeometryClass
from .errors import ConicDetError, ConvergenceError, DomainError, ValidationError
from .extremal import Classification, classify, hessian_symmetric, threshold_area
from .liouville import ActionBreakdown, action_explicit, action_flat, h_functional
from .uniformization import Potential, phi_big, phi_coeffs, potential

__version__ = "0.1.0"

__all__ = [
    "ActionBreakdown",
    "Classification",
    "ConeDivisor",
    "ConicDetError",
    "ConvergenceError",
    "DetResult",
    "DomainError",
    "GeometryClass",
    "Path",
    "Potential",
    "SurfaceSpec",
    "ValidationError",
    "action_explicit",
    "action_flat",
    "classify",
    "h_functional",
    "hessian_symmetric",
    "logdet",
    "logdet_flat",
    "logdet_quadrature",
    "logdet_round_sphere",
    "logdet_spindle",
    "logdet_unit",
    "phi_big",
    "phi_coeffs",
    "potential",
    "threshold_area",
    "zeta0",
    "zeta0_flat",
]
