import math

import pytest
from hypothesis import given, strategies as st

from conicdet.divisor import DEFAULT_POINTS, ConeDivisor, GeometryClass
from conicdet.errors import ValidationError


def test_geometry_classes():
    assert ConeDivisor((-0.8, -0.8, -0.8)).geometry is GeometryClass.HYPERBOLIC
    assert ConeDivisor((-0.5, -0.8, -0.7)).geometry is GeometryClass.FLAT
    assert ConeDivisor((-0.2, -0.3, -0.4)).geometry is GeometryClass.SPHERICAL


def test_flat_tolerance():
    assert GeometryClass.from_degree(-2.0 + 5e-13) is GeometryClass.FLAT
    assert GeometryClass.from_degree(-2.0 + 1e-11) is GeometryClass.SPHERICAL


def test_curvature_gauss_bonnet():
    d = ConeDivisor((-0.2, -0.3, -0.4))
    assert d.curvature == pytest.approx(2 * math.pi * (d.degree + 2))


@pytest.mark.parametrize("beta", [(-0.5, 0.0, -0.5), (-1.0, -0.5, -0.5), (0.1, -0.5, -0.5), (float("nan"), -0.5, -0.5)])
def test_order_range(beta):
    with pytest.raises(ValidationError) as info:
        ConeDivisor(beta)
    assert info.value.invariant == "order must lie in (-1,0)"


def test_troyanov():
    with pytest.raises(ValidationError) as info:
        ConeDivisor((-0.98, -0.3, -0.5))
    assert info.value.invariant == "Troyanov condition"


def test_points_distinct():
    with pytest.raises(ValidationError):
        ConeDivisor((-0.5, -0.5, -0.5), (0, 0, 1))


def test_swap_and_points():
    d = ConeDivisor((-0.2, -0.5, -0.6), (0, 1, 2j))
    e = d.swapped(0, 2)
    assert e.beta == (-0.6, -0.5, -0.2) and e.points == (2j, 1, 0)
    assert not d.is_standard and ConeDivisor(d.beta).points == DEFAULT_POINTS


@given(st.tuples(*[st.floats(-0.999, -0.001)] * 3))
def test_validity_matches_troyanov(beta):
    s = sum(beta)
    valid = s <= -2.0 + 1e-12 or all(b - s / 2 > 0 for b in beta)
    if valid:
        d = ConeDivisor(beta)
        assert d.degree == pytest.approx(s)
    else:
        with pytest.raises(ValidationError):
            ConeDivisor(beta)
