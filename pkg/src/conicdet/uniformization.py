"""Unit-area constant-curvature metrics with three cone points.

The metric is e^{2 phi} |dz|^2 on the Riemann sphere.  For orders
(beta_a, beta_b, beta_c) placed at (0, 1, infinity) it is the pullback of

    4 |dw|^2 / (1 + K |w|^2)^2,   K = 2 pi (|beta| + 2),

by the Schwarz triangle map w = u2 / u1 built from two solutions of a Gauss
hypergeometric equation.  Any other placement of the marked points is
reached by a Moebius change of variable.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
from scipy import special as sp

from .divisor import ConeDivisor, GeometryClass, as_divisor
from .errors import ConvergenceError, DomainError
from .specfun import digamma, hyp2f1, trigamma

__all__ = [
    "PhiPartials",
    "PotentialSample",
    "Potential",
    "phi_big",
    "phi_big_partials",
    "phi_coeffs",
    "phi_coeff_general",
    "schwarz_w",
    "schwarz_w_prime",
    "phi_infinity",
    "metric_phi",
    "potential",
    "liouville_residual",
    "area_integral",
    "phi_weighted_integral",
    "SERIES_RADIUS",
]

LOG2 = math.log(2.0)
LOG_4PI = math.log(4.0 * math.pi)
# points whose best chart coordinate exceeds this radius use the Taylor patch
SERIES_RADIUS = 0.75
_X0 = complex(0.5, math.sqrt(3.0) / 2.0)
_TAYLOR_TERMS = 64


# -- the function Phi -----------------------------------------------------

# Phi = sum c * log Gamma(u) - log(4 pi)/2 with u = const + w . (b1, b2, b3, |beta|)
_PHI_TERMS = (
    (0.5, 2.0, (0.0, 0.0, 0.0, 0.5)),
    (-0.5, 0.0, (0.0, 0.0, 0.0, -0.5)),
    (1.0, 0.0, (-1.0, 0.0, 0.0, 0.0)),
    (-1.0, 1.0, (1.0, 0.0, 0.0, 0.0)),
    (0.5, 0.0, (1.0, 0.0, 0.0, -0.5)),
    (0.5, 1.0, (0.0, -1.0, 0.0, 0.5)),
    (0.5, 1.0, (0.0, 0.0, -1.0, 0.5)),
    (-0.5, 1.0, (-1.0, 0.0, 0.0, 0.5)),
    (-0.5, 0.0, (0.0, 1.0, 0.0, -0.5)),
    (-0.5, 0.0, (0.0, 0.0, 1.0, -0.5)),
)


def _orders(beta) -> Tuple[float, float, float]:
    if isinstance(beta, ConeDivisor):
        return beta.beta
    b = tuple(float(v) for v in beta)
    if len(b) != 3:
        raise DomainError("expected three cone orders")
    return b


def _gamma_arguments(b):
    s = math.fsum(b)
    x = (b[0], b[1], b[2], s)
    return [(c, const + sum(wi * xi for wi, xi in zip(w, x)), w) for c, const, w in _PHI_TERMS]


def phi_big(beta) -> float:
    """The normalising function Phi(beta_1, beta_2, beta_3).

    The first slot is the order placed at the origin of the (0, 1, infinity)
    chart; the function is symmetric in the last two slots.  When
    |beta| = -2 (flat class) the reduced Gamma-product form is used.
    """
    b = _orders(beta)
    if GeometryClass.from_degree(math.fsum(b)) is GeometryClass.FLAT:
        args = [-b[0], -b[1], -b[2], b[0] + 1.0, b[1] + 1.0, b[2] + 1.0]
        if min(args) <= 0:
            raise DomainError(f"Gamma argument not positive for beta = {b}")
        return 0.5 * (
            math.fsum(math.lgamma(v) for v in args[:3])
            - math.fsum(math.lgamma(v) for v in args[3:])
            - LOG_4PI
        )
    terms = _gamma_arguments(b)
    for _, u, _ in terms:
        if not u > 0:
            raise DomainError(f"Gamma argument {u!r} not positive for beta = {b}")
    return math.fsum([c * math.lgamma(u) for c, u, _ in terms] + [-0.5 * LOG_4PI])


@dataclass(frozen=True)
class PhiPartials:
    gradient: Tuple[float, float, float]
    hessian_diag_sum: float
    d1_minus_d2: float
    hessian: np.ndarray = field(repr=False, compare=False)


def phi_big_partials(beta, hold_degree: bool = False) -> PhiPartials:
    """Analytic first and second partial derivatives of Phi.

    By default |beta| = beta_1 + beta_2 + beta_3 is differentiated through
    every slot.  With ``hold_degree=True`` the slot derivatives treat |beta|
    as an independent argument held fixed; this is the convention in which
    the Hessian of log det at the symmetric point takes its closed form.
    """
    b = _orders(beta)
    terms = _gamma_arguments(b)
    for _, u, _ in terms:
        if not u > 0:
            raise DomainError(f"Gamma argument {u!r} not positive for beta = {b}")
    grad = np.zeros(3)
    hess = np.zeros((3, 3))
    for c, u, w in terms:
        w = np.asarray(w)
        dw = w[:3] if hold_degree else w[:3] + w[3]
        grad += c * digamma(u) * dw
        hess += c * trigamma(u) * np.outer(dw, dw)
    return PhiPartials(
        gradient=tuple(float(g) for g in grad),
        hessian_diag_sum=float(np.trace(hess)),
        d1_minus_d2=float(grad[0] - grad[1]),
        hessian=hess,
    )


# -- asymptotic coefficients ----------------------------------------------


def phi_coeffs(beta) -> Tuple[float, float, float]:
    """Constant terms phi_j of phi(z) - beta_j log|z - p_j| for points (-1, 0, 1)."""
    b1, b2, b3 = _orders(beta)
    return (
        -b1 * LOG2 + phi_big((b1, b2, b3)),
        (b2 + 2.0) * LOG2 + phi_big((b2, b1, b3)),
        -b3 * LOG2 + phi_big((b3, b2, b1)),
    )


def phi_coeff_general(beta, points: Sequence[complex]) -> Tuple[float, float, float]:
    """Coefficients phi_j for arbitrary distinct finite marked points."""
    b = _orders(beta)
    p = [complex(v) for v in points]
    if len(p) != 3 or len({p[0], p[1], p[2]}) != 3:
        raise DomainError("marked points must be three distinct points")
    out = []
    for j, (k, l) in enumerate(((1, 2), (0, 2), (1, 0))):
        # slot order of Phi: (beta_j, beta_k, beta_l); log-distance factor symmetric in k, l
        ratio = abs((p[l] - p[k]) / ((p[l] - p[j]) * (p[k] - p[j])))
        out.append((b[j] + 1.0) * math.log(ratio) + LOG2 + phi_big((b[j], b[k], b[l])))
    return tuple(out)


# -- hypergeometric data of one chart -------------------------------------


@dataclass(frozen=True)
class _ChartParams:
    """Orders (ba, bb, bc) at (0, 1, infinity) and the associated constants."""

    ba: float
    bb: float
    bc: float
    phi: float
    scale: float  # c_beta = e^Phi / (ba + 1)
    curvature: float
    f1: Tuple[float, float, float]
    f2: Tuple[float, float, float]

    @classmethod
    def build(cls, ba, bb, bc):
        s = ba + bb + bc
        phi = phi_big((ba, bb, bc))
        return cls(
            ba, bb, bc, phi, math.exp(phi) / (ba + 1.0), 2.0 * math.pi * (s + 2.0),
            (bc - 0.5 * s, -1.0 - 0.5 * s, -ba),
            (1.0 - bb + 0.5 * s, ba - 0.5 * s, 2.0 + ba),
        )

    @property
    def flat(self):
        return GeometryClass.from_degree(self.ba + self.bb + self.bc) is GeometryClass.FLAT

    def solutions(self, x, derivatives=False):
        """u1 = F1(x), u2 = c x^(ba+1) F2(x), optionally with x-derivatives."""
        a1, b1, c1 = self.f1
        a2, b2, c2 = self.f2
        xp = x ** (self.ba + 1.0)
        if self.flat:
            u1 = np.ones_like(x)
        else:
            u1 = hyp2f1(a1, b1, c1, x)
        f2 = hyp2f1(a2, b2, c2, x)
        u2 = self.scale * xp * f2
        if not derivatives:
            return u1, u2
        du1 = np.zeros_like(x) if self.flat else a1 * b1 / c1 * hyp2f1(a1 + 1, b1 + 1, c1 + 1, x)
        df2 = a2 * b2 / c2 * hyp2f1(a2 + 1, b2 + 1, c2 + 1, x)
        du2 = self.scale * ((self.ba + 1.0) * xp / x * f2 + xp * df2)
        return u1, u2, du1, du2

    def taylor_coefficients(self, center, value, slope, n_terms=_TAYLOR_TERMS):
        """Taylor coefficients about ``center`` of the solution of the chart's
        hypergeometric equation with the given value and derivative."""
        a, b, c = self.f1
        p0 = center * (1.0 - center)
        p1 = 1.0 - 2.0 * center
        q0 = c - (a + b + 1.0) * center
        q1 = -(a + b + 1.0)
        coef = np.zeros(n_terms, dtype=complex)
        coef[0], coef[1] = value, slope
        for n in range(n_terms - 2):
            coef[n + 2] = -(
                (p1 * n * (n + 1) + q0 * (n + 1)) * coef[n + 1]
                + (-n * (n - 1) + q1 * n - a * b) * coef[n]
            ) / (p0 * (n + 1) * (n + 2))
        return coef


def _horner(coef, t):
    acc = np.full_like(t, coef[-1], dtype=complex)
    for cf in coef[-2::-1]:
        acc = acc * t + cf
    return acc


def _horner_derivative(coef, t):
    n = np.arange(1, len(coef))
    return _horner(coef[1:] * n, t)


@functools.lru_cache(maxsize=256)
def _taylor_patch(params: _ChartParams):
    """Coefficients of u1, u2 about e^{i pi/3}, continued from inside the series disk."""
    start = complex(0.5, 0.3)
    u1, u2, du1, du2 = (complex(v[0]) for v in params.solutions(np.array([start]), derivatives=True))
    path = np.linspace(start, _X0, 5)
    state = [(u1, du1), (u2, du2)]
    for here, there in zip(path[:-1], path[1:]):
        h = np.array([there - here])
        new = []
        for value, slope in state:
            coef = params.taylor_coefficients(here, value, slope)
            new.append((_horner(coef, h)[0], _horner_derivative(coef, h)[0]))
        state = new
    return tuple(params.taylor_coefficients(_X0, v, d) for v, d in state)


def _chart_solutions(params: _ChartParams, x):
    """u1, u2 for chart coordinates x (series disk or Taylor patch)."""
    x = np.asarray(x, dtype=complex)
    u1 = np.empty_like(x)
    u2 = np.empty_like(x)
    inner = np.abs(x) <= SERIES_RADIUS
    if np.any(inner):
        u1[inner], u2[inner] = params.solutions(x[inner])
    outer = ~inner
    if np.any(outer):
        if params.flat:
            raise ConvergenceError("flat charts have no Taylor patch")
        xo = x[outer]
        lower = xo.imag < 0
        xu = np.where(lower, np.conj(xo), xo)
        if np.any(np.abs(xu - _X0) > 0.62):
            raise ConvergenceError("point outside the supported domain of the Schwarz map")
        c1, c2 = _taylor_patch(params)
        t = xu - _X0
        v1, v2 = _horner(c1, t), _horner(c2, t)
        u1[outer] = np.where(lower, np.conj(v1), v1)
        u2[outer] = np.where(lower, np.conj(v2), v2)
    return u1, u2


# -- the potential ----------------------------------------------------------


@dataclass(frozen=True)
class PotentialSample:
    z: complex
    phi: float
    residual: float


class Potential:
    """Vectorised evaluator of the potential phi(z) of the unit-area metric.

    Each point is evaluated in the Moebius chart (one of the six ways of
    sending the marked points to 0, 1, infinity) in which its image is
    closest to the origin, so the hypergeometric series converge fast.
    Points not covered by any chart with |x| <= 0.75 are handled through a
    Taylor expansion about x = e^{i pi/3}.
    """

    def __init__(self, divisor: ConeDivisor):
        self.divisor = as_divisor(divisor)
        self.points = np.array(self.divisor.points, dtype=complex)
        b = self.divisor.beta
        p = self.divisor.points
        self._charts = []
        for i, j, k in itertools.permutations(range(3)):
            params = _ChartParams.build(b[i], b[j], b[k])
            kk = (p[j] - p[k]) / (p[j] - p[i])
            self._charts.append(dict(
                idx=(i, j, k),
                params=params,
                k=kk,
                log_k=math.log(abs(kk)),
                log_one_minus=math.log(abs(p[k] - p[i])) - math.log(abs(p[j] - p[i])),
                log_dx=math.log(abs(kk * (p[i] - p[k]))),
            ))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        diffs = z[None, ...] - self.points.reshape((3,) + (1,) * z.ndim)
        return self.from_differences(diffs)

    def from_offsets(self, center, delta):
        """phi(center + delta), with differences to the marked points formed as
        (center - p_k) + delta so that tiny offsets from a marked point stay exact."""
        center = np.asarray(center, dtype=complex)
        delta = np.asarray(delta, dtype=complex)
        shape = np.broadcast(center, delta).shape
        base = np.broadcast_to(center, shape)[None, ...] - self.points.reshape((3,) + (1,) * len(shape))
        return self.from_differences(base + delta[None, ...])

    def from_differences(self, diffs):
        """phi at points given by their differences z - p_k, shape (3, ...)."""
        diffs = np.asarray(diffs, dtype=complex)
        shape = diffs.shape[1:]
        d = diffs.reshape(3, -1)
        if np.any(d == 0):
            raise DomainError("potential is singular at the marked points")
        logd = np.log(np.abs(d))
        # chart coordinate moduli
        logx = np.array([c["log_k"] + logd[c["idx"][0]] - logd[c["idx"][2]] for c in self._charts])
        best = np.argmin(logx, axis=0)
        if self._charts[0]["params"].flat:
            best[:] = 0
        out = np.empty(d.shape[1])
        for n, chart in enumerate(self._charts):
            sel = best == n
            if not np.any(sel):
                continue
            i, j, k = chart["idx"]
            par = chart["params"]
            x = chart["k"] * d[i, sel] / d[k, sel]
            lx = logx[n, sel]
            l1x = logd[j, sel] + chart["log_one_minus"] - logd[k, sel]
            if par.flat:
                log_den = np.zeros(np.count_nonzero(sel))
            else:
                u1, u2 = _chart_solutions(par, x)
                log_den = np.log(np.abs(u1) ** 2 + par.curvature * np.abs(u2) ** 2)
            out[sel] = (
                LOG2 + par.phi + par.ba * lx + par.bb * l1x - log_den
                + chart["log_dx"] - 2.0 * logd[k, sel]
            )
        return out.reshape(shape)


@functools.lru_cache(maxsize=128)
def _cached_potential(divisor: ConeDivisor) -> Potential:
    return Potential(divisor)


def potential(beta, z):
    """Vectorised phi(z) for the divisor ``beta`` (ConeDivisor or order triple)."""
    return _cached_potential(as_divisor(beta))(z)


def liouville_residual(beta, z, rel_step=5e-3):
    """Normalised defect of the Liouville equation at z.

    Returns -Delta phi e^{-2 phi} - K, with Delta phi from the fourth-order
    nine-point cross stencil of step rel_step * (distance to the nearest
    marked point).
    """
    div = as_divisor(beta)
    pot = _cached_potential(div)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    dist = np.min(np.abs(z[None, :] - pot.points[:, None]), axis=0)
    h = rel_step * dist
    offs = np.array([0, 1, -1, 1j, -1j, 2, -2, 2j, -2j])
    v = pot.from_offsets(z[None, :], offs[:, None] * h[None, :])
    near = v[1] + v[2] + v[3] + v[4]
    far = v[5] + v[6] + v[7] + v[8]
    lap = (16.0 * near - far - 60.0 * v[0]) / (12.0 * h * h)
    return -lap * np.exp(-2.0 * v[0]) - div.curvature


def metric_phi(z: complex, beta) -> PotentialSample:
    div = as_divisor(beta)
    z = complex(z)
    if np.min(np.abs(z - np.array(div.points))) == 0:
        raise DomainError("potential is singular at the marked points")
    phi = float(_cached_potential(div)(np.array([z]))[0])
    res = float(liouville_residual(div, np.array([z]))[0])
    return PotentialSample(z=z, phi=phi, residual=res)


# -- Schwarz triangle map ---------------------------------------------------


def _gauss_at_one(a, b, c):
    return sp.gamma(c) * sp.gamma(c - a - b) / (sp.gamma(c - a) * sp.gamma(c - b))


def schwarz_w(z, beta):
    """Schwarz triangle map w = c x^(beta_1+1) F2(x) / F1(x) in the chart where
    the orders (beta_1, beta_2, beta_3) sit at (0, 1, infinity).

    Principal branch of the power on the upper half-plane; supported on
    |z| <= 0.75, on a neighbourhood of e^{+-i pi/3} and at z = 1.
    """
    par = _ChartParams.build(*_orders(beta))
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1)
    out = np.empty_like(flat)
    at_one = flat == 1.0
    if np.any(at_one):
        g1 = 1.0 if par.flat else _gauss_at_one(*par.f1)
        out[at_one] = par.scale * _gauss_at_one(*par.f2) / g1
    rest = ~at_one
    if np.any(rest):
        u1, u2 = _chart_solutions(par, flat[rest])
        out[rest] = u2 / u1
    out = out.reshape(z.shape)
    return out.item() if out.ndim == 0 else out


def schwarz_w_prime(z, beta):
    """Derivative c (beta_1+1) x^beta_1 (1-x)^beta_2 / F1(x)^2 of the Schwarz map."""
    par = _ChartParams.build(*_orders(beta))
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1)
    u1, _ = _chart_solutions(par, flat)
    out = par.scale * (par.ba + 1.0) * flat**par.ba * (1.0 - flat) ** par.bb / u1**2
    out = out.reshape(z.shape)
    return out.item() if out.ndim == 0 else out


def phi_infinity(beta) -> float:
    """Constant term phi_inf in phi(z) = -2 log|z| + phi_inf + o(1), points (-1, 0, 1).

    Uses the values of the Schwarz map and its derivative at x = -1, which
    reduce to hypergeometric series at argument 1/2.
    """
    b1, b2, b3 = _orders(beta)
    s = b1 + b2 + b3
    phi = phi_big((b1, b2, b3))
    fa = hyp2f1(b3 - 0.5 * s, 1.0 - b1 + 0.5 * s, -b1, 0.5)
    fb = hyp2f1(1.0 - b2 + 0.5 * s, 2.0 + 0.5 * s, 2.0 + b1, 0.5)
    w_abs = 2.0 ** (-1.0 - b1) * math.exp(phi) / (b1 + 1.0) * abs(fb / fa)
    log_wp = (b3 - b1) * LOG2 + phi - 2.0 * math.log(abs(fa))
    arg = 1.0 + 2.0 * math.pi * (2.0 + s) * w_abs * w_abs
    if not arg > 0:
        raise DomainError("image of infinity lies outside the model disk")
    return 2.0 * LOG2 + log_wp - math.log(arg)


# -- integrals over the sphere ---------------------------------------------


def area_integral(beta, resolution: int = 2) -> float:
    """Area of e^{2 phi}|dz|^2 by singularity-aware quadrature (should be 1)."""
    from .quadrature import sphere_integrals

    return sphere_integrals(as_divisor(beta), resolution).area


def phi_weighted_integral(beta, resolution: int = 2) -> float:
    """Integral of phi e^{2 phi} over the plane, with the same quadrature."""
    from .quadrature import sphere_integrals

    return sphere_integrals(as_divisor(beta), resolution).phi_weighted
