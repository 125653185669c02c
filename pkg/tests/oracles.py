"""Independent 30-digit reference implementations built on mpmath.

Nothing here imports the package under test.
"""

from mpmath import mp, mpf, zeta, loggamma, log, pi, floor, exp, bernoulli, digamma

mp.dps = 30

ZETA_R_PRIME_M1 = zeta(-1, 1, 1)


def hurwitz_prime_m1(x):
    return zeta(-1, mpf(x), 1)


def barnes_prime0(a, M=None, K=12):
    """zeta_B'(0; a, 1, 1) via layers zeta_H(s, a m + 1) and an asymptotic tail."""
    a = mpf(a)
    if M is None:
        M = int(max(200, 60 / a))
    y = M + 1 / a
    head = sum(loggamma(a * m + 1) - log(2 * pi) / 2 for m in range(M))
    t0 = (a * log(a) - a) * zeta(-1, y) - a * zeta(-1, y, 1)
    t1 = (-log(a) * zeta(0, y) + zeta(0, y, 1)) / 2
    t2 = bernoulli(2) / (2 * a) * (-log(a) - digamma(y))
    tk = sum(bernoulli(2 * k) / ((2 * k) * (2 * k - 1)) * a ** (1 - 2 * k) * zeta(2 * k - 1, y) for k in range(2, K))
    return head + t0 + t1 + t2 + tk


def c_of_beta(b):
    b = mpf(b)
    return 2 * barnes_prime0(b + 1) - 2 * ZETA_R_PRIME_M1 - b**2 / (6 * (b + 1)) * log(2) - b / 12 + log(b + 1) / 2


def big_phi(b1, b2, b3):
    b1, b2, b3 = mpf(b1), mpf(b2), mpf(b3)
    s = b1 + b2 + b3
    lg = loggamma
    return (
        (lg(2 + s / 2) - log(4 * pi) - lg(-s / 2)) / 2
        + lg(-b1) - lg(1 + b1)
        + (lg(b1 - s / 2) + lg(1 + s / 2 - b2) + lg(1 + s / 2 - b3)
           - lg(1 + s / 2 - b1) - lg(b2 - s / 2) - lg(b3 - s / 2)) / 2
    )


def phi_coeffs(b1, b2, b3):
    return (
        -mpf(b1) * log(2) + big_phi(b1, b2, b3),
        (mpf(b2) + 2) * log(2) + big_phi(b2, b1, b3),
        -mpf(b3) * log(2) + big_phi(b3, b2, b1),
    )


def action(b1, b2, b3):
    b1, b2, b3 = mpf(b1), mpf(b2), mpf(b3)
    s = b1 + b2 + b3
    zh = hurwitz_prime_m1
    v = -(s + 2) / 2 * (2 + log(pi))
    v -= ((b1**2 + 2 * b1) / 2 - (b2**2 + 2 * b2) / 2 + (b3**2 + 2 * b3) / 2) * log(2)
    v -= sum(zh(-b) + zh(1 + b) - zh(b - s / 2) - zh(1 + s / 2 - b) for b in (b1, b2, b3))
    v += zh(-s / 2) + zh(2 + s / 2) - 2 * ZETA_R_PRIME_M1
    return 4 * pi * v


def log_h(b1, b2, b3):
    return 2 * sum((mpf(b) + 1 - 1 / (mpf(b) + 1)) * p for b, p in zip((b1, b2, b3), phi_coeffs(b1, b2, b3)))


def zeta0(b1, b2, b3):
    bs = [mpf(b) for b in (b1, b2, b3)]
    return (sum(bs) + 2) / 6 - sum(b + 1 - 1 / (b + 1) for b in bs) / 12 - 1


def logdet(b1, b2, b3, area=1):
    bs = [mpf(b) for b in (b1, b2, b3)]
    s = sum(bs)
    return (
        -(s + 1) / 6
        - (action(*bs) - pi * log_h(*bs)) / (12 * pi)
        - sum(c_of_beta(b) for b in bs)
        - 4 * log(2) / 3 - 4 * ZETA_R_PRIME_M1 - log(pi)
        - zeta0(*bs) * log(mpf(area))
    )


def logdet_flat(b1, b3, area=1):
    b1, b3 = mpf(b1), mpf(b3)
    b2 = -2 - b1 - b3
    bs = (b1, b2, b3)
    c2 = 2 ** (2 * b2 + 2) * exp(sum(loggamma(-b) - loggamma(b + 1) for b in bs)) / pi
    z0 = -mpf(13) / 12 + sum(1 / (b + 1) for b in bs) / 12
    return (
        (b1 * b3 / (b1 + 1) + b1 * b3 / (b3 + 1)) * log(2) / 6
        - sum(2 * barnes_prime0(b + 1) - b**2 / (6 * (b + 1)) * log(2) + log(b + 1) / 2 for b in bs)
        - log(c2) - z0 * log(c2 * area) - 4 * log(2) / 3 + 2 * ZETA_R_PRIME_M1 - log(pi)
    )


def spindle(b):
    """Unit-area spindle log det (the 4 pi normalisation)."""
    a = mpf(b) + 1
    return a / 2 - (a + 1 / a) / 6 * log(a / (4 * pi)) - 4 * barnes_prime0(a) - log(4 * pi * a)


def sawtooth(x):
    x = mpf(x)
    return mpf(0) if x == floor(x) else x - floor(x) - mpf(1) / 2
