import pytest

from conicdet.divisor import ConeDivisor
from conicdet.verify import SUITES, flat_line_grid, regular_points, run_suite


@pytest.mark.parametrize("suite", list(SUITES))
def test_suite_passes(suite):
    results = run_suite(suite)
    assert results and all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_grids_are_valid():
    for b in flat_line_grid():
        assert ConeDivisor(b).geometry.value == "flat"
    pts = regular_points((-0.5, -0.5, -0.5))
    assert len(pts) == 20 and pts == regular_points((-0.5, -0.5, -0.5))
