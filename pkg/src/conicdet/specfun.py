"""Real special functions: gamma family, Gauss hypergeometric series,
Hurwitz zeta derivative at -1, the Barnes double zeta derivative at 0 and
the per-cone constant C(beta).

Functions accept scalars or numpy arrays unless stated otherwise and return
a Python float for scalar input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as sp

from .errors import ConvergenceError, DomainError

__all__ = [
    "PrecisionConfig",
    "DEFAULT_PRECISION",
    "Constants",
    "CONSTANTS",
    "log_gamma",
    "digamma",
    "trigamma",
    "hyp2f1",
    "zeta_h_prime_m1",
    "barnes_zeta_prime0",
    "barnes_zeta0",
    "barnes_zeta_prime0_d2",
    "barnes_zeta_prime0_rational",
    "sawtooth",
    "dedekind_sum",
    "c_of_beta",
    "c_of_beta_second_derivative",
]


@dataclass(frozen=True)
class PrecisionConfig:
    """Numerical knobs shared by the special-function routines."""

    rel_tol: float = 1e-12
    series_max_terms: int = 4000
    euler_maclaurin_shift: int = 8

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.series_max_terms < 32:
            raise DomainError("series_max_terms must be at least 32")
        if self.euler_maclaurin_shift < 8:
            raise DomainError("euler_maclaurin_shift must be at least 8")


DEFAULT_PRECISION = PrecisionConfig()


@dataclass(frozen=True)
class Constants:
    log_glaisher: float = 0.24875447703378426
    pi: float = math.pi
    log_pi: float = math.log(math.pi)
    log2: float = math.log(2.0)

    @property
    def zeta_prime_riemann_m1(self) -> float:
        """Derivative of the Riemann zeta function at -1."""
        return 1.0 / 12.0 - self.log_glaisher


CONSTANTS = Constants()
ZETA_PRIME_M1 = CONSTANTS.zeta_prime_riemann_m1
LOG_2PI = math.log(2.0 * math.pi)


def _out(value, scalar):
    if scalar:
        return value.item() if isinstance(value, np.ndarray) else value
    return value


def _positive_array(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(arr <= 0):
        raise DomainError(f"{name} must be positive, got {x!r}")
    return arr, arr.ndim == 0


def log_gamma(x):
    """Natural logarithm of the gamma function for x > 0."""
    arr, scalar = _positive_array(x)
    return _out(sp.gammaln(arr), scalar)


def digamma(x):
    arr, scalar = _positive_array(x)
    return _out(sp.psi(arr), scalar)


def trigamma(x):
    arr, scalar = _positive_array(x)
    return _out(sp.polygamma(1, arr), scalar)


# -- Gauss hypergeometric series ------------------------------------------


def _hyp2f1_series(a, b, c, z, config):
    stop = max(config.rel_tol * 1e-5, 2.0**-56)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for n in range(config.series_max_terms):
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0))
        term = term * (ratio * z)
        total = total + term
        if not np.any(term):
            return total
        # tail bound from the asymptotic term ratio, valid once it drops below one
        r = np.max(np.abs(z)) * max(1.0, abs(ratio))
        if r < 1.0:
            tail = np.max(np.abs(term) / np.maximum(np.abs(total), 1e-300)) * r / (1.0 - r)
            if tail < stop:
                return total
    raise ConvergenceError(
        f"hypergeometric series did not converge in {config.series_max_terms} terms"
    )


def hyp2f1(a, b, c, z, config: PrecisionConfig = DEFAULT_PRECISION, transform="auto"):
    """Gauss hypergeometric function F(a, b, c; z) for real parameters and |z| < 1.

    ``z`` may be real or complex (scalar or array).  With ``transform="auto"``
    the Euler form (1-z)^(c-a-b) F(c-a, c-b, c; z) is used when its
    coefficients are smaller than those of the direct series.
    """
    a, b, c = float(a), float(b), float(c)
    if c <= 0 and c == math.floor(c):
        raise DomainError("c must not be a non-positive integer")
    zarr = np.asarray(z)
    scalar = zarr.ndim == 0
    zarr = np.atleast_1d(zarr)
    dtype = complex if np.iscomplexobj(zarr) else float
    zarr = zarr.astype(dtype)
    if zarr.size and np.max(np.abs(zarr)) >= 1.0:
        raise DomainError("hypergeometric series requires |z| < 1")
    if transform == "auto":
        terminating = any(p <= 0 and p == math.floor(p) for p in (a, b))
        use_euler = not terminating and abs((c - a) * (c - b)) < 0.5 * abs(a * b)
    elif transform == "euler":
        use_euler = True
    elif transform == "none":
        use_euler = False
    else:
        raise ValueError(f"unknown transform {transform!r}")
    if use_euler:
        prefactor = (1.0 - zarr) ** (c - a - b)
        value = prefactor * _hyp2f1_series(c - a, c - b, c, zarr, config)
    else:
        value = _hyp2f1_series(a, b, c, zarr, config)
    if scalar:
        return value[0].item()
    return value.reshape(np.shape(z))


# -- Hurwitz zeta derivative ----------------------------------------------

_BERNOULLI = sp.bernoulli(40)


def _xlogx(x):
    return np.where(x > 0, x * np.log(np.where(x > 0, x, 1.0)), 0.0)


def zeta_h_prime_m1(x, config: PrecisionConfig = DEFAULT_PRECISION):
    """Derivative in s of the Hurwitz zeta function zeta(s, x) at s = -1."""
    arr, scalar = _positive_array(x)
    arr = np.atleast_1d(arr)
    shift = config.euler_maclaurin_shift
    n_steps = np.maximum(0, np.ceil(shift - arr)).astype(int)
    acc = np.zeros_like(arr)
    y = arr.copy()
    for k in range(int(n_steps.max(initial=0))):
        active = k < n_steps
        acc = acc + np.where(active, _xlogx(y), 0.0)
        y = np.where(active, y + 1.0, y)
    logy = np.log(y)
    inv2 = 1.0 / (y * y)
    asym = 1.0 / 12.0 - 0.25 * y * y + (0.5 * y * y - 0.5 * y + 1.0 / 12.0) * logy
    power = inv2.copy()
    for k in range(1, 12):
        asym = asym - _BERNOULLI[2 * k + 2] / ((2 * k + 2) * (2 * k + 1) * (2 * k)) * power
        power = power * inv2
    value = asym - acc
    if scalar:
        return value[0].item()
    return value


# -- Barnes double zeta ---------------------------------------------------


def _hurwitz_m1(y):
    """zeta(-1, y) = -B_2(y) / 2."""
    return -0.5 * (y * y - y + 1.0 / 6.0)


def _barnes_layers(a, config, layers):
    a = float(a)
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"Barnes parameter must be positive, got {a!r}")
    M = max(8 if layers is None else int(layers), int(math.ceil(8.0 / a)))
    if M > 50 * config.series_max_terms:
        raise ConvergenceError("Barnes layer count exceeds the series budget")
    return a, M, M + 1.0 / a


def _layered_prime0(c, x, M, config):
    """d/ds at s = 0 of sum_{m >= 0} zeta_H(s, c m + x).

    The first M layers are summed exactly; the rest follow from the
    large-argument expansion of zeta_H(s, c t), which turns the tail into
    Hurwitz zeta values at y = M + x / c.
    """
    y = M + x / c
    head = math.fsum(sp.gammaln(c * np.arange(M) + x)) - 0.5 * M * LOG_2PI
    logc = math.log(c)
    t0 = (c * logc - c) * _hurwitz_m1(y) - c * zeta_h_prime_m1(y, config)
    t1 = 0.5 * (-logc * (0.5 - y) + sp.gammaln(y) - 0.5 * LOG_2PI)
    t2 = _BERNOULLI[2] / (2.0 * c) * (-logc - sp.psi(y))
    tail = [
        _BERNOULLI[2 * k] / ((2 * k) * (2 * k - 1)) * c ** (1 - 2 * k) * sp.zeta(2 * k - 1, y)
        for k in range(2, 10)
    ]
    return math.fsum([head, t0, t1, t2, *tail])


def barnes_zeta0(a) -> float:
    """zeta_B(0; a, 1, 1) = (a^2 - 3a + 1) / (12 a)."""
    a = float(a)
    return (a * a - 3.0 * a + 1.0) / (12.0 * a)


def barnes_zeta_prime0(a, config: PrecisionConfig = DEFAULT_PRECISION, layers=None):
    """Derivative at s = 0 of the Barnes double zeta function zeta_B(s; a, 1, 1).

    The lattice sum over a m + n + 1 is cut into one-dimensional Hurwitz
    layers along whichever direction has step >= 1: layers zeta_H(s, a m + 1)
    for a >= 1, and for a < 1 the rescaled layers a^-s zeta_H(s, (n + 1)/a).
    Enough layers are summed exactly that every remaining argument is >= 8.
    """
    a = float(a)
    if not a > 0 or not math.isfinite(a):
        raise DomainError(f"Barnes parameter must be positive, got {a!r}")
    c, x = (a, 1.0) if a >= 1.0 else (1.0 / a, 1.0 / a)
    M = max(0, int(math.ceil((8.0 - x) / c))) if layers is None else int(layers)
    value = _layered_prime0(c, x, M, config)
    if a < 1.0:
        value -= math.log(a) * barnes_zeta0(a)
    return value


def barnes_zeta_prime0_d2(a, config: PrecisionConfig = DEFAULT_PRECISION, layers=None):
    """Second derivative in a of zeta_B'(0; a, 1, 1).

    Uses d^2/da^2 zeta_B(s; a, 1, 1) = s (s+1) sum_m m^2 zeta_H(s+2, a m + 1):
    the head layers give trigamma values, the tail is continued through the
    same large-argument expansion and its pole at s = 0 is resolved exactly.
    """
    a, M, y = _barnes_layers(a, config, layers)
    m = np.arange(M, dtype=float)
    head = math.fsum(m * m * sp.polygamma(1, a * m + 1.0))
    loga = math.log(a)
    psi = sp.psi(y)
    z_m1 = _hurwitz_m1(y)
    z_0 = 0.5 - y
    z = {k: sp.zeta(k, y) for k in range(2, 22)}
    terms = [
        head,
        (z_m1 - 2.0 * z_0 / a) / a,
        0.5 * (z_0 + z[2] / a**2) / a**2,
        (-2.0 * z[2] / a + z[3] / a**2) / (6.0 * a**3),
        (-0.75 - loga / 6.0 - psi / 6.0) / a**3,
    ]
    for k in range(2, 10):
        terms.append(
            _BERNOULLI[2 * k] * a ** (-2 * k - 1) * (z[2 * k - 1] - 2.0 * z[2 * k] / a + z[2 * k + 1] / a**2)
        )
    return math.fsum(terms)


def sawtooth(x: Fraction) -> Fraction:
    """((x)) = x - floor(x) - 1/2 for non-integers and 0 at integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(q: int, p: int) -> Fraction:
    """Dedekind sum S(q, p) = sum_{j=1..p} ((j/p)) ((j q / p)) as an exact rational."""
    if int(p) != p or p < 1:
        raise DomainError("p must be a positive integer")
    p, q = int(p), int(q)
    return sum((sawtooth(Fraction(j, p)) * sawtooth(Fraction(j * q, p)) for j in range(1, p + 1)), Fraction(0))


def barnes_zeta_prime0_rational(p: int, q: int) -> float:
    """zeta_B'(0; p/q, 1, 1) for coprime positive integers from the exact
    Dedekind-sum representation."""
    if int(p) != p or int(q) != q or p < 1 or q < 1:
        raise DomainError("p and q must be positive integers")
    p, q = int(p), int(q)
    if math.gcd(p, q) != 1:
        raise DomainError(f"p={p} and q={q} must be coprime")
    if p == 1:
        terms = [ZETA_PRIME_M1 / q, -math.log(q) / (12 * q), (q - 1) / 4 * LOG_2PI]
        terms += [-(j / q) * math.lgamma(j / q) for j in range(1, q)]
        return math.fsum(terms)
    terms = [
        ZETA_PRIME_M1 / (p * q),
        -math.log(q) / (12 * p * q),
        float(Fraction(1, 4) + dedekind_sum(q, p)) * math.log(q / p),
    ]
    terms += [
        (0.5 - k / p) * math.lgamma(float(sawtooth(Fraction(k * q, p)) + Fraction(1, 2)))
        for k in range(1, p)
    ]
    terms += [
        (0.5 - j / q) * math.lgamma(float(sawtooth(Fraction(j * p, q)) + Fraction(1, 2)))
        for j in range(1, q)
    ]
    return math.fsum(terms)


# -- per-cone constant ----------------------------------------------------


def _c_from_barnes(beta, barnes):
    return math.fsum([
        2.0 * barnes,
        -2.0 * ZETA_PRIME_M1,
        -beta * beta / (6.0 * (beta + 1.0)) * CONSTANTS.log2,
        -beta / 12.0,
        0.5 * math.log1p(beta),
    ])


def c_of_beta(beta, config: PrecisionConfig = DEFAULT_PRECISION, rational=None):
    """The per-cone constant C(beta) built from zeta_B'(0; beta+1, 1, 1).

    ``rational=(p, q)`` with beta + 1 = p/q switches to the exact Barnes formula.
    """
    beta = float(beta)
    if not beta > -1.0:
        raise DomainError(f"C(beta) requires beta > -1, got {beta!r}")
    if rational is not None:
        p, q = rational
        if abs(p / q - (beta + 1.0)) > 1e-15:
            raise DomainError("rational=(p, q) must satisfy p/q = beta + 1")
        barnes = barnes_zeta_prime0_rational(p, q)
    else:
        barnes = barnes_zeta_prime0(beta + 1.0, config)
    return _c_from_barnes(beta, barnes)


def c_of_beta_second_derivative(beta, method="analytic", step=1e-3, levels=2,
                                config: PrecisionConfig = DEFAULT_PRECISION):
    """C''(beta).

    ``method="analytic"`` differentiates the Barnes layer representation
    twice in closed form.  ``method="richardson"`` uses Richardson-extrapolated
    central second differences of :func:`c_of_beta` with the given base step,
    good to about 1e-7 relative with the defaults.
    """
    beta = float(beta)
    if not beta > -1.0:
        raise DomainError(f"C(beta) requires beta > -1, got {beta!r}")
    a = beta + 1.0
    if method == "analytic":
        return math.fsum([
            2.0 * barnes_zeta_prime0_d2(a, config),
            -CONSTANTS.log2 / (3.0 * a**3),
            -0.5 / a**2,
        ])
    if method != "richardson":
        raise ValueError(f"unknown method {method!r}")
    from .numdiff import richardson_second_derivative

    if beta - step <= -1.0:
        raise DomainError("finite-difference stencil leaves the domain beta > -1")
    return richardson_second_derivative(lambda b: c_of_beta(b, config), beta, step, levels)
