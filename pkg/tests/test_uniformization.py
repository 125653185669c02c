import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conicdet import uniformization as un
from conicdet.divisor import ConeDivisor
from conicdet.errors import DomainError
from conicdet.numdiff import richardson_derivative
from conicdet.verify import CLASS_SAMPLES, regular_points

valid_triples = st.tuples(*[st.floats(-0.95, -0.05)] * 3).filter(
    lambda b: sum(b) <= -2.0 or all(x - sum(b) / 2 > 0.02 for x in b)
)


def test_phi_equal_orders_frozen():
    assert un.phi_big((-2 / 3,) * 3) == pytest.approx(-2.28891768115501056, abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(valid_triples)
def test_phi_against_mpmath(b):
    if abs(sum(b) + 2.0) < 1e-9:
        return
    assert un.phi_big(b) == pytest.approx(float(oracles.big_phi(*b)), abs=1e-12)


def test_phi_flat_reduced_form_is_continuous():
    b1, b3 = -0.5, -0.7
    flat = un.phi_big((b1, -2.0 - b1 - b3, b3))
    near = un.phi_big((b1, -2.0 - b1 - b3 + 1e-8, b3))
    assert flat == pytest.approx(near, abs=1e-7)


def test_phi_symmetric_in_last_two_slots():
    assert un.phi_big((-0.3, -0.5, -0.4)) == pytest.approx(un.phi_big((-0.3, -0.4, -0.5)), abs=1e-15)


@pytest.mark.parametrize("b", [-0.2, -0.5, -0.8])
def test_phi_spindle_limit(b):
    ref = float(oracles.big_phi(b, oracles.mpf("-1e-20"), b))
    assert un.phi_big((b, -1e-9, b)) == pytest.approx(ref, abs=1e-7)


def test_phi_spindle_limit_half():
    assert un.phi_big((-0.5, -1e-10, -0.5)) == pytest.approx(0.5 * math.log(1 / (8 * math.pi)), abs=1e-8)


@pytest.mark.parametrize("hold", [False, True])
def test_phi_partials_vs_finite_differences(hold):
    b0 = np.array([-0.3, -0.5, -0.4])
    parts = un.phi_big_partials(tuple(b0), hold_degree=hold)
    if hold:
        # degree held fixed: differentiate the Gamma-argument expression with |beta| frozen
        s = float(b0.sum())

        def phi_fixed(b):
            return math.fsum(c * math.lgamma(u) for c, u, _ in _args_with_degree(b, s)) - 0.5 * math.log(4 * math.pi)
    else:
        phi_fixed = un.phi_big
    for j in range(3):
        def f(t, j=j):
            b = b0.copy()
            b[j] = t
            return phi_fixed(tuple(b))
        assert parts.gradient[j] == pytest.approx(richardson_derivative(f, b0[j], 1e-4, 2), abs=1e-9)
    assert parts.d1_minus_d2 == pytest.approx(parts.gradient[0] - parts.gradient[1], abs=1e-15)
    assert parts.hessian_diag_sum == pytest.approx(float(np.trace(parts.hessian)), abs=1e-15)


def _args_with_degree(b, s):
    x = (b[0], b[1], b[2], s)
    return [(c, const + sum(wi * xi for wi, xi in zip(w, x)), w) for c, const, w in un._PHI_TERMS]


def test_phi_coeffs_against_mpmath():
    b = (-0.3, -0.5, -0.4)
    ref = [float(v) for v in oracles.phi_coeffs(*b)]
    assert np.allclose(un.phi_coeffs(b), ref, atol=1e-12, rtol=0)


def test_phi_coeffs_match_potential_near_cone():
    b = (-0.3, -0.5, -0.4)

    def local(r):
        return float(un.potential(b, np.array([-1 + r]))[0]) - b[0] * math.log(r)

    r = 1e-4
    extrapolated = (10 * local(r / 10) - local(r)) / 9
    assert extrapolated == pytest.approx(un.phi_coeffs(b)[0], abs=1e-6)


def test_general_points_reduce_to_standard():
    b = (-0.3, -0.5, -0.4)
    assert np.allclose(un.phi_coeff_general(b, (-1, 0, 1)), un.phi_coeffs(b), atol=1e-13)


@pytest.mark.parametrize("beta", list(CLASS_SAMPLES.values()))
def test_far_field_constant(beta):
    def tail(radius):
        return float(un.potential(beta, np.array([radius * (0.6 + 0.8j)]))[0]) + 2 * math.log(radius)

    # the remainder decays like 1/R; one extrapolation step removes it
    extrapolated = (10 * tail(1e5) - tail(1e4)) / 9
    assert extrapolated == pytest.approx(un.phi_infinity(beta), abs=1e-7)


def test_residual_at_sample_point():
    assert abs(un.liouville_residual((-0.2, -0.3, -0.4), np.array([0.3 + 0.4j]))[0]) < 1e-7


@pytest.mark.parametrize("cls", list(CLASS_SAMPLES))
def test_liouville_equation_on_regular_points(cls):
    beta = CLASS_SAMPLES[cls]
    res = un.liouville_residual(beta, np.array(regular_points(beta)))
    assert np.max(np.abs(res)) <= 1e-6


def test_metric_phi_sample():
    sample = un.metric_phi(0.3 + 0.4j, (-0.8, -0.8, -0.8))
    assert abs(sample.residual) < 1e-6
    with pytest.raises(DomainError):
        un.metric_phi(0.0, (-0.8, -0.8, -0.8))


def test_potential_real_symmetry():
    beta = (-0.3, -0.5, -0.4)
    z = np.array([0.2 + 0.7j, -1.5 + 0.3j, 2.0 + 2.0j])
    assert np.allclose(un.potential(beta, z), un.potential(beta, np.conj(z)), atol=1e-13)


def test_chart_independence():
    beta = (-0.6, -0.7, -0.5)
    a = ConeDivisor(beta)
    b = ConeDivisor(beta, (-1, 0, 1 + 1e-15))
    z = np.array([0.37 + 0.51j, 3.0 - 1.0j])
    assert np.allclose(un.potential(a, z), un.potential(b, z), atol=1e-12)


def test_moebius_covariance_of_potential():
    beta = (-0.3, -0.5, -0.4)
    # z -> -z swaps the outer points; phi is invariant when the orders are swapped too
    z = np.array([0.3 + 0.4j, -1.7 + 0.2j])
    lhs = un.potential(beta, z)
    rhs = un.potential((beta[2], beta[1], beta[0]), -z)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_schwarz_derivative():
    beta = (-0.4, -0.5, -0.6)
    z = 0.3 + 0.2j
    h = 1e-5
    fd = (un.schwarz_w(z + h, beta) - un.schwarz_w(z - h, beta)) / (2 * h)
    assert abs(fd - un.schwarz_w_prime(z, beta)) < 1e-7 * abs(fd)


def test_schwarz_at_one():
    beta = (-0.4, -0.5, -0.6)
    b1, b2, b3 = (oracles.mp.mpf(v) for v in beta)
    s = b1 + b2 + b3
    f1 = oracles.mp.hyp2f1(b3 - s / 2, -1 - s / 2, -b1, 1)
    f2 = oracles.mp.hyp2f1(1 - b2 + s / 2, b1 - s / 2, 2 + b1, 1)
    ref = oracles.mp.exp(oracles.big_phi(*beta)) / (b1 + 1) * f2 / f1
    assert un.schwarz_w(1.0, beta) == pytest.approx(float(ref), rel=1e-12)


def test_singular_point_rejected():
    with pytest.raises(DomainError):
        un.potential((-0.5, -0.5, -0.5), np.array([1.0]))
