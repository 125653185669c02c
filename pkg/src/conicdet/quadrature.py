"""Quadrature of e^{2 phi} and phi e^{2 phi} over the plane.

The plane is covered by a smooth partition of unity:

* a polar patch of radius 1/2 around each marked point, with weight one
  inside radius 1/4;
* an exterior patch |z| >= 2 handled in the variable u = 1/z, with weight
  one for |z| >= 4;
* the remainder, an annulus 1/4 <= |z| <= 4 about the origin, where the
  integrand times its weight is smooth.

Near a cone point of order beta the density behaves like rho^(2 beta); the
substitution t = rho^(2 beta + 2) turns the radial integrand into a bounded
function, integrated with Gauss-Legendre panels graded geometrically
towards t = 0.  The last sliver [0, t_min] is added from the leading term of
the local expansion.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .divisor import DEFAULT_POINTS, ConeDivisor
from .errors import ConvergenceError, DomainError

__all__ = ["SphereIntegrals", "sphere_integrals", "bump"]

R_IN, R_OUT = 0.25, 0.5
TWO_PI = 2.0 * math.pi


def bump(r, r_in=R_IN, r_out=R_OUT):
    """Smooth step equal to 1 for r <= r_in and 0 for r >= r_out."""
    t = np.clip((np.asarray(r, dtype=float) - r_in) / (r_out - r_in), 0.0, 1.0)
    with np.errstate(divide="ignore"):
        f_lo = np.where(t < 1.0, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
        f_hi = np.where(t > 0.0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
    return f_lo / (f_lo + f_hi)


@dataclass(frozen=True)
class SphereIntegrals:
    area: float
    phi_weighted: float
    n_nodes: int


@dataclass(frozen=True)
class _Rule:
    gl_order: int
    transition_panels: int
    grading: float
    n_theta: int
    middle_step: float
    middle_order: int
    middle_theta: int

    @classmethod
    def at(cls, resolution):
        k = int(resolution)
        if k < 1:
            raise DomainError("resolution must be a positive integer")
        return cls(
            gl_order=10 + 4 * k,
            transition_panels=2 + 2 * k,
            grading=0.25 ** (1.0 / k),
            n_theta=48 + 32 * k,
            middle_step=0.25 / k,
            middle_order=10 + 4 * k,
            middle_theta=160 * k + 96,
        )


def _gl_panels(edges, order):
    x, w = np.polynomial.legendre.leggauss(order)
    a, b = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (b - a) * x[None, :] + 0.5 * (b + a)
    weights = 0.5 * (b - a) * w[None, :]
    return nodes.ravel(), weights.ravel()


def _theta(n):
    return (np.arange(n) + 0.5) * (TWO_PI / n), TWO_PI / n


def _accumulate(log_density, phi, weight):
    dens = np.exp(log_density) * weight
    return math.fsum(dens.ravel()), math.fsum((phi * dens).ravel())


def _local_patch(evaluate, gamma, lead_log, lead_const, rule):
    """Integrate over rho < 1/2 around a point where, with t = rho^gamma,

        e^{2 phi} rho drho = (1/gamma) e^{2 phi} t^(2/gamma - 1) dt,
        phi = lead_log * log(rho) + lead_const + o(1).

    ``evaluate(rho, theta)`` returns (phi, log of the extra density factor)
    on broadcast grids.
    """
    theta, dtheta = _theta(rule.n_theta)
    area = phi_w = 0.0
    n_nodes = 0

    # transition band, plain radial variable
    edges = np.linspace(R_IN, R_OUT, rule.transition_panels + 1)
    rho, w = _gl_panels(edges, rule.gl_order)
    phi, extra = evaluate(rho[:, None], theta[None, :])
    weight = (w * rho * bump(rho))[:, None] * dtheta
    a, p = _accumulate(2.0 * phi + extra, phi, weight)
    area, phi_w = area + a, phi_w + p
    n_nodes += phi.size

    # inner disk in t = rho^gamma with geometric grading
    t_top = R_IN**gamma
    t_min = max(1e-15 * t_top, math.exp(gamma * math.log(1e-290)))
    n_pan = max(1, int(math.ceil(math.log(t_min / t_top) / math.log(rule.grading))))
    edges = t_top * rule.grading ** np.arange(n_pan + 1)[::-1]
    edges[0] = t_min
    t, w = _gl_panels(edges, rule.gl_order)
    log_t = np.log(t)
    rho = np.exp(log_t / gamma)
    phi, extra = evaluate(rho[:, None], theta[None, :])
    log_jac = (2.0 / gamma - 1.0) * log_t - math.log(gamma)
    a, p = _accumulate(2.0 * phi + extra + log_jac[:, None], phi, w[:, None] * dtheta)
    area, phi_w = area + a, phi_w + p
    n_nodes += phi.size

    # sliver [0, t_min] from the leading term
    amp = math.exp(2.0 * lead_const) / gamma
    area += TWO_PI * amp * t_min
    phi_w += TWO_PI * amp * (lead_log / gamma * (t_min * math.log(t_min) - t_min) + lead_const * t_min)
    return area, phi_w, n_nodes


def _compute(divisor: ConeDivisor, resolution: int) -> SphereIntegrals:
    from .uniformization import _cached_potential, phi_coeffs, phi_infinity

    if divisor.points != DEFAULT_POINTS:
        raise DomainError("sphere quadrature expects marked points (-1, 0, 1)")
    rule = _Rule.at(resolution)
    pot = _cached_potential(divisor)
    coeffs = phi_coeffs(divisor.beta)
    area = phi_w = 0.0
    n_nodes = 0

    for j, center in enumerate(DEFAULT_POINTS):
        beta = divisor.beta[j]

        def cone(rho, theta, center=center):
            delta = rho * np.exp(1j * theta)
            phi = pot.from_offsets(np.full(delta.shape, center), delta)
            return phi, 0.0

        a, p, n = _local_patch(cone, 2.0 * beta + 2.0, beta, coeffs[j], rule)
        area, phi_w, n_nodes = area + a, phi_w + p, n_nodes + n

    def exterior(rho, theta):
        z = np.exp(-1j * theta) / rho
        phi = pot(z)
        return phi, -4.0 * np.log(rho) * np.ones_like(phi)

    a, p, n = _local_patch(exterior, 2.0, 2.0, phi_infinity(divisor.beta), rule)
    area, phi_w, n_nodes = area + a, phi_w + p, n_nodes + n

    # middle annulus about the origin
    edges = np.arange(R_IN, 4.0 + 0.5 * rule.middle_step, rule.middle_step)
    rho, w = _gl_panels(edges, rule.middle_order)
    theta, dtheta = _theta(rule.middle_theta)
    z = rho[:, None] * np.exp(1j * theta[None, :])
    weight = 1.0 - bump(np.abs(z)) - bump(np.abs(z + 1.0)) - bump(np.abs(z - 1.0)) - bump(1.0 / np.abs(z))
    keep = weight > 0
    phi = pot(z[keep])
    a, p = _accumulate(2.0 * phi, phi, (weight * (w * rho)[:, None] * dtheta)[keep])
    area, phi_w, n_nodes = area + a, phi_w + p, n_nodes + phi.size

    if not (math.isfinite(area) and math.isfinite(phi_w)):
        raise ConvergenceError("sphere quadrature produced a non-finite value")
    return SphereIntegrals(area=area, phi_weighted=phi_w, n_nodes=n_nodes)


@functools.lru_cache(maxsize=128)
def _cached(divisor: ConeDivisor, resolution: int) -> SphereIntegrals:
    return _compute(divisor, resolution)


def sphere_integrals(divisor: ConeDivisor, resolution: int = 2, tol: float = 1e-6) -> SphereIntegrals:
    """Area and phi-weighted integral of the unit-area metric of ``divisor``.

    The rule at ``resolution`` is compared with the next coarser one; a
    disagreement above ``tol`` raises :class:`ConvergenceError`.
    """
    fine = _cached(divisor, resolution)
    if resolution > 1 and tol is not None:
        coarse = _cached(divisor, resolution - 1)
        gap = max(abs(fine.area - coarse.area), abs(fine.phi_weighted - coarse.phi_weighted))
        if gap > tol:
            raise ConvergenceError(f"sphere quadrature not converged: refinement changed the result by {gap:.3g}")
    return fine
