import math

import pytest

from conicdet.numdiff import richardson_derivative, richardson_limit, richardson_second_derivative, richardson_table


def test_first_derivative():
    assert richardson_derivative(math.sin, 0.7, 1e-2, 2) == pytest.approx(math.cos(0.7), abs=1e-13)


def test_second_derivative():
    # roundoff floor is about 1e-16 / h^2 with h = 2.5e-3, amplified by the extrapolation
    assert richardson_second_derivative(math.exp, 0.3, 1e-2, 2) == pytest.approx(math.exp(0.3), rel=1e-9)


def test_limit_removes_linear_and_quadratic_terms():
    def f(e):
        return 2.0 + 3.0 * e - 5.0 * e * e
    assert richardson_limit(f) == pytest.approx(2.0, abs=1e-13)


def test_table_single_value():
    assert richardson_table([1.5], 2.0, ()) == 1.5
