import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftlab.cellspace import CellSet, get_space
from shiftlab.errors import UnsupportedError
from shiftlab.tiling import covering_inequality, folner_density, greedy_tiling, verify_tiling

Z = get_space("Z")


def test_unit_spacing():
    t = greedy_tiling(Z, 0, 0, 5)
    assert list(t.points) == list(range(-5, 6))
    assert t.theta_prime == 0


def test_spacing_five():
    t = greedy_tiling(Z, 1, 2, 20)
    assert list(t.points) == [-20, -15, -10, -5, 0, 5, 10, 15, 20]
    assert t.theta_prime == 8 and t.spacing == 5
    assert verify_tiling(Z, t.points, 1, 2, 8, 20).holds


def test_z2_tiling_verifies():
    Z2 = get_space("Z2")
    t = greedy_tiling(Z2, 0, 1, 6)
    assert verify_tiling(Z2, t.points, 0, 1, t.theta_prime, 6).holds


def test_verify_detects_close_points():
    v = verify_tiling(Z, [0, 1], 1, 0, 4, 2)
    assert not v.holds
    assert v.details["close_pairs"] == [(0, 1)]


def test_verify_detects_holes():
    v = verify_tiling(Z, [0, 20], 1, 2, 8, 20)
    assert not v.holds
    assert 9 in v.details["uncovered"]


def test_sparse_regression():
    # multiples of 10 are 8 apart from every cell of the safe region
    T = CellSet(Z, range(-50, 51, 10))
    assert verify_tiling(Z, T, 1, 2, 8, 50).holds


def test_finite_space_refused():
    with pytest.raises(UnsupportedError):
        greedy_tiling(get_space("cycle:6"), 1, 1, 3)


@pytest.mark.parametrize("name", ["Z", "Z2", "Dinf"])
@pytest.mark.parametrize("theta", range(3))
@pytest.mark.parametrize("kappa", range(3))
def test_tiling_theorem_small(name, theta, kappa):
    space = get_space(name)
    R = 14
    t = greedy_tiling(space, theta, kappa, R)
    assert verify_tiling(space, t.points, theta, kappa, 4 * theta + 2 * kappa, R).holds


def test_monotone_in_radius():
    for name, radii in (("Z", (6, 13, 20)), ("Z2", (4, 8, 10)), ("free:2", (2, 4, 6))):
        space = get_space(name)
        previous = set()
        for R in radii:
            points = greedy_tiling(space, 1, 0, R).points.cells
            assert previous <= points
            previous = points


def test_folner_density_on_intervals():
    t = greedy_tiling(Z, 1, 2, 60)
    windows = [range(-i, i + 1) for i in range(1, 41)]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dens = folner_density(Z, t, windows)
    assert dens.epsilon == Fraction(1, 34)
    assert dens.holds_beyond_i0()
    assert abs(float(dens.ratios[-1]) - 1 / 5) < 0.05


def test_folner_density_full_tiling():
    t = greedy_tiling(Z, 0, 0, 30)
    dens = folner_density(Z, t, [range(-i, i + 1) for i in range(5)])
    assert all(r == 1 for r in dens.ratios)


def test_folner_density_warns_outside_region():
    t = greedy_tiling(Z, 1, 2, 10)
    with pytest.warns(UserWarning):
        dens = folner_density(Z, t, [range(0, 30)])
    assert dens.warnings


@pytest.mark.parametrize("name", ["Z", "Z2"])
@given(data=st.data())
@settings(max_examples=40)
def test_covering_inequality(name, data):
    space = get_space(name)
    tiling = greedy_tiling(space, 1, 1, 20)
    pool = space.ball(space.origin, 12 if name == "Z" else 6).ordered
    F = CellSet(space, data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=60)))
    assert covering_inequality(space, F, tiling)["holds"]
