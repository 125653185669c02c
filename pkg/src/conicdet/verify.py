"""Invariant suites run by ``conicdet verify``.

Each check reports the measured residual next to its tolerance; the
tolerance is multiplied by ``tol_scale``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, List

import numpy as np

from . import determinant as det
from . import extremal as ext
from . import liouville as lv
from . import specfun as sf
from . import uniformization as un
from .divisor import ConeDivisor
from .numdiff import richardson_derivative

__all__ = ["CheckResult", "SUITES", "run_suite", "CLASS_SAMPLES", "DUAL_PATH_DIVISORS", "GOVERNING_GRID", "flat_line_grid", "regular_points"]

CLASS_SAMPLES = {
    "hyperbolic": (-0.8, -0.8, -0.8),
    "flat": (-0.5, -0.8, -0.7),
    "spherical": (-0.2, -0.3, -0.4),
}

DUAL_PATH_DIVISORS = (
    (-0.8, -0.8, -0.8),
    (-0.95, -0.9, -0.9),
    (-0.6, -0.9, -0.7),
    (-0.5, -0.8, -0.7),
    (-2.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0),
    (-0.3, -0.9, -0.8),
    (-0.2, -0.3, -0.4),
    (-0.05, -0.05, -0.05),
    (-0.1, -0.5, -0.5),
)

GOVERNING_GRID = tuple(itertools.product((-0.9, -0.7, -0.5), repeat=3))

STATIONARY_DEGREES = (-2.7, -2.4, -2.0, -1.5, -0.9, -0.3)
STATIONARY_AREAS = (0.1, 1.0, 10.0)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}.{self.name} residual={self.residual:.3e} tol={self.tol:.1e}"


def regular_points(beta, count: int = 20, seed: int = 0):
    """Deterministic sample of points at distance >= 0.1 from every cone point."""
    rng = np.random.default_rng(seed)
    pts = ConeDivisor(tuple(beta)).points
    out = []
    while len(out) < count:
        z = complex(rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))
        if min(abs(z - p) for p in pts) >= 0.1:
            out.append(z)
    return out


def flat_line_grid(n: int = 5):
    """n*n divisors with |beta| = -2, spread over the interior of the flat simplex."""
    out = []
    for t1, t2 in itertools.product(np.linspace(0.1, 0.9, n), repeat=2):
        b1 = float(t1) - 1.0
        b3 = (1.0 - float(t1)) * float(t2) - 1.0
        out.append((b1, -2.0 - b1 - b3, b3))
    return out


def _max(values):
    return float(max(values))


# -- suites ---------------------------------------------------------------


def _specfun():
    rng = np.random.default_rng(12)
    x = rng.uniform(0.0, 5.0, 100)
    x = x[x > 0]
    rec = np.abs(sf.zeta_h_prime_m1(x + 1.0) - sf.zeta_h_prime_m1(x) - x * np.log(x))
    yield "hurwitz_recurrence", _max(rec), 1e-11
    gaps = []
    for p in range(1, 10):
        for q in range(1, 10):
            if gcd(p, q) == 1:
                gaps.append(abs(sf.barnes_zeta_prime0_rational(p, q) - sf.barnes_zeta_prime0(p / q)))
    yield "barnes_rational_vs_numeric", _max(gaps), 1e-10
    d2 = [
        abs(sf.c_of_beta_second_derivative(b) - sf.c_of_beta_second_derivative(b, method="richardson"))
        / max(1.0, abs(sf.c_of_beta_second_derivative(b)))
        for b in (-0.9, -0.5, -0.1)
    ]
    yield "c_second_derivative_routes", _max(d2), 1e-6


def _uniformization():
    for cls, beta in CLASS_SAMPLES.items():
        res = np.abs(un.liouville_residual(beta, np.array(regular_points(beta))))
        yield f"liouville_residual[{cls}]", _max(res), 1e-6
    for cls, beta in CLASS_SAMPLES.items():
        yield f"unit_area[{cls}]", abs(un.area_integral(beta) - 1.0), 1e-6
    grad = np.array(un.phi_big_partials((-0.3, -0.5, -0.4)).gradient)
    fd = []
    for j in range(3):
        def f(t, j=j):
            b = [-0.3, -0.5, -0.4]
            b[j] = t
            return un.phi_big(b)
        fd.append(richardson_derivative(f, (-0.3, -0.5, -0.4)[j], 1e-5, 1))
    yield "phi_partials_vs_fd", _max(np.abs(grad - np.array(fd))), 1e-7


def _action():
    res = [lv.governing_check(b, j) for b in GOVERNING_GRID for j in (1, 2, 3)]
    yield "governing_equations", _max(res), 1e-6
    flat = []
    for b in flat_line_grid():
        flat.append(abs(lv.action_explicit(b) - lv.action_flat(b[0], b[2])))
    yield "flat_line_action", _max(flat), 1e-10
    rng = np.random.default_rng(5)
    scal = []
    for _ in range(5):
        beta = tuple(rng.uniform(-0.9, -0.5, 3))
        area = float(rng.uniform(0.2, 5.0))
        s = math.fsum(beta)
        k = 2.0 * math.pi * (s + 2.0) / area
        lhs = 4.0 * math.pi * lv.action_general_points(k, beta, ConeDivisor(beta).points)
        scal.append(abs(lhs - lv.action_explicit(beta) - 2.0 * math.pi * (s + 2.0) * math.log(area)))
    yield "rescaling_relation", _max(scal), 1e-9


def _determinant():
    gaps = [abs(det.logdet_quadrature(b).log_det - det.logdet_unit(b).log_det) for b in DUAL_PATH_DIVISORS]
    yield "dual_path", _max(gaps), 1e-6
    flat = []
    for b in flat_line_grid():
        flat.append(abs(det.logdet_unit(b).log_det - det.logdet_flat(b[0], b[2])))
    yield "flat_oracle", _max(flat), 1e-9
    sp = [abs(det.spindle_limit(b) - det.logdet_spindle(b)) for b in (-0.2, -0.5, -0.8)]
    yield "spindle_limit", _max(sp), 1e-5
    yield "round_sphere_limit", abs(det.sphere_limit() - det.logdet_round_sphere()), 1e-6
    mob = []
    for b in ((-0.4, -0.5, -0.6), (-0.8, -0.8, -0.7), (-0.2, -0.3, -0.4)):
        ref = det.logdet_unit(b).log_det
        for pts in ((0, 1, 2), (0.3 + 1j, -2.0, 5j)):
            mob.append(abs(ref - det.logdet_unit(b, points=pts).log_det))
    yield "moebius_invariance", _max(mob), 1e-9


def _extremal():
    grads, hess = [], []
    for s in STATIONARY_DEGREES:
        b = (s / 3.0,) * 3
        for area in STATIONARY_AREAS:
            grads.append(float(np.linalg.norm(ext.gradient_at(b, area))))
            h = ext.hessian_symmetric(s, area)
            fd = ext.hessian_fd(b, area)
            hess.append(max(abs(fd[0, 0] - h.d11), abs(fd[0, 1] - h.d13), abs(fd[1, 1] - h.d11)))
    yield "stationary_gradient", _max(grads), 1e-8
    yield "hessian_vs_fd", _max(hess), 1e-5
    yield "threshold_at_minus_two", abs(ext.threshold_area(-2.0) - 1.92), 0.02
    third = (-2.0 / 3.0,) * 3
    ok = (
        ext.classify(third, math.sqrt(3.0) / 2.0) is ext.Classification.MINIMUM
        and ext.classify(third, 4.0) is ext.Classification.MAXIMUM
    )
    yield "classification", 0.0 if ok else 1.0, 0.5


SUITES: Dict[str, Callable] = {
    "specfun": _specfun,
    "uniformization": _uniformization,
    "action": _action,
    "determinant": _determinant,
    "extremal": _extremal,
}


def run_suite(name: str, tol_scale: float = 1.0) -> List[CheckResult]:
    """Run one suite (or ``"all"``) and return its checks in a fixed order."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}")
        for check, residual, tol in SUITES[n]():
            out.append(CheckResult(n, check, float(residual), tol * tol_scale))
    return out
