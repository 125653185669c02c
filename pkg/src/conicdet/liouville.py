"""Liouville action of the unit-area metric and related functionals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .divisor import DEFAULT_POINTS, ConeDivisor, as_divisor
from .errors import DomainError, ValidationError
from .numdiff import richardson_derivative
from .specfun import CONSTANTS, ZETA_PRIME_M1, zeta_h_prime_m1
from .uniformization import _orders, phi_coeff_general, phi_coeffs

__all__ = [
    "ActionBreakdown",
    "action_explicit",
    "action_breakdown",
    "h_functional",
    "action_flat",
    "classical_action",
    "classical_action_at_area",
    "action_general_points",
    "action_at_points",
    "governing_check",
    "conformal_weights",
]

FOUR_PI = 4.0 * math.pi
LOG2 = CONSTANTS.log2


@dataclass(frozen=True)
class ActionBreakdown:
    """Liouville action with its summands (each a contribution to S / 4 pi)."""

    action: float
    log_h: float
    classical: float
    terms: Tuple[Tuple[str, float], ...]

    def total_over_4pi(self) -> float:
        return math.fsum(v for _, v in self.terms)


def _hurwitz_block(b, s) -> List[Tuple[str, float]]:
    terms = []
    for j, bj in enumerate(b, start=1):
        vals = zeta_h_prime_m1(np.array([-bj, 1.0 + bj, bj - 0.5 * s, 1.0 + 0.5 * s - bj]))
        terms.append((f"hurwitz[{j}]", -(vals[0] + vals[1] - vals[2] - vals[3])))
    ends = zeta_h_prime_m1(np.array([-0.5 * s, 2.0 + 0.5 * s]))
    terms.append(("hurwitz[degree]", ends[0] + ends[1]))
    terms.append(("riemann", -2.0 * ZETA_PRIME_M1))
    return terms


def _check_hurwitz_arguments(b):
    s = math.fsum(b)
    for bj in b:
        if not (-1.0 < bj < 0.0):
            raise DomainError(f"cone order {bj!r} outside (-1, 0)")
        if not bj - 0.5 * s > 0.0:
            raise DomainError(f"beta_j - |beta|/2 = {bj - 0.5 * s!r} must be positive")
    return s


def action_terms(beta) -> List[Tuple[str, float]]:
    """Labelled summands of S_beta[phi] / (4 pi) for marked points (-1, 0, 1)."""
    b = _orders(beta)
    s = _check_hurwitz_arguments(b)
    b1, b2, b3 = b
    poly = 0.5 * (b1 * b1 + 2 * b1) - 0.5 * (b2 * b2 + 2 * b2) + 0.5 * (b3 * b3 + 2 * b3)
    terms = [
        ("curvature", -0.5 * (s + 2.0) * (2.0 + CONSTANTS.log_pi)),
        ("log2", -poly * LOG2),
    ]
    return terms + _hurwitz_block(b, s)


def action_explicit(beta) -> float:
    """Liouville action S_beta[phi] of the unit-area metric, points (-1, 0, 1)."""
    return FOUR_PI * math.fsum(v for _, v in action_terms(beta))


def h_functional(beta, points: Sequence[complex] = DEFAULT_POINTS) -> float:
    """log H = 2 sum_j (beta_j + 1 - 1/(beta_j + 1)) phi_j."""
    b = _orders(beta)
    if tuple(complex(p) for p in points) == DEFAULT_POINTS:
        coeffs = phi_coeffs(b)
    else:
        coeffs = phi_coeff_general(b, points)
    return 2.0 * math.fsum((bj + 1.0 - 1.0 / (bj + 1.0)) * pj for bj, pj in zip(b, coeffs))


def action_flat(beta1: float, beta3: float) -> float:
    """Liouville action 4 pi beta_1 beta_3 log 2 on the flat line beta_2 = -2 - beta_1 - beta_3."""
    beta2 = -2.0 - beta1 - beta3
    for name, v in (("beta_1", beta1), ("beta_3", beta3), ("implied beta_2", beta2)):
        if not -1.0 < v < 0.0:
            raise ValidationError(f"order must lie in (-1,0): {name} = {v!r}", "order must lie in (-1,0)")
    return FOUR_PI * beta1 * beta3 * LOG2


def conformal_weights(beta) -> Tuple[float, float, float]:
    """delta_j = -beta_j (beta_j + 2)."""
    return tuple(-bj * (bj + 2.0) for bj in _orders(beta))


def classical_action_at_area(area: float, beta) -> float:
    """Classical action expressed through the area S = 2 pi (|beta| + 2) / K."""
    if not area > 0:
        raise DomainError("area must be positive")
    b = _orders(beta)
    s = _check_hurwitz_arguments(b)
    terms = [0.5 * (s + 2.0) * (math.log(area / math.pi) - 2.0)]
    terms += [v for _, v in _hurwitz_block(b, s)]
    return math.fsum(terms)


def classical_action(K: float, beta) -> float:
    """Classical Liouville action for curvature K; independent of the marked points."""
    s = math.fsum(_orders(beta))
    if K == 0 or not (s + 2.0) / K > 0:
        raise DomainError("curvature and |beta| + 2 must have the same nonzero sign (positive area)")
    return classical_action_at_area(2.0 * math.pi * (s + 2.0) / K, beta)


def _point_terms(beta, points) -> float:
    d1, d2, d3 = conformal_weights(beta)
    p = [complex(v) for v in points]
    if len({p[0], p[1], p[2]}) != 3:
        raise DomainError("marked points must be distinct")
    return math.fsum([
        0.5 * (d1 + d2 - d3) * math.log(abs(p[0] - p[1])),
        0.5 * (d2 + d3 - d1) * math.log(abs(p[1] - p[2])),
        0.5 * (d3 + d1 - d2) * math.log(abs(p[0] - p[2])),
    ])


def action_general_points(K: float, beta, points: Sequence[complex]) -> float:
    """S_beta[phi + log(S)/2] / (4 pi) for the area-S metric at arbitrary points,
    S = 2 pi (|beta| + 2) / K: the classical action plus log-distance terms."""
    return classical_action(K, beta) + _point_terms(beta, points)


def action_at_points(beta, points: Sequence[complex] = DEFAULT_POINTS) -> float:
    """Liouville action S_beta[phi] of the unit-area metric at arbitrary marked points."""
    return FOUR_PI * (classical_action_at_area(1.0, beta) + _point_terms(beta, points))


def action_breakdown(beta) -> ActionBreakdown:
    b = _orders(beta)
    terms = tuple(action_terms(b))
    return ActionBreakdown(
        action=FOUR_PI * math.fsum(v for _, v in terms),
        log_h=h_functional(b),
        classical=classical_action_at_area(1.0, b),
        terms=terms,
    )


def governing_check(beta, j: int, step: float = 1e-5, levels: int = 1) -> float:
    """|d S / d beta_j - (4 pi phi_j - 2 pi)| by Richardson central differences.

    ``j`` is 1-based.
    """
    div = as_divisor(beta)
    if j not in (1, 2, 3):
        raise DomainError("j must be 1, 2 or 3")
    b = list(div.beta)
    idx = j - 1

    def shifted(v):
        bb = list(b)
        bb[idx] = v
        return tuple(bb)

    for v in (b[idx] - step, b[idx] + step):
        try:
            ConeDivisor(shifted(v))
        except ValidationError as exc:
            raise DomainError(f"difference stencil leaves the valid divisor set: {exc}") from exc
    deriv = richardson_derivative(lambda v: action_explicit(shifted(v)), b[idx], step, levels)
    target = FOUR_PI * phi_coeffs(div.beta)[idx] - 2.0 * math.pi
    return abs(deriv - target)
