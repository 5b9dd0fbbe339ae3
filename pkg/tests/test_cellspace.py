import pytest
from hypothesis import given, strategies as st

from shiftlab.cellspace import (
    CellSet,
    ball,
    boundary,
    closure,
    distance,
    external_boundary,
    get_space,
    interior,
    internal_boundary,
    semi_act,
    sphere,
    stabiliser_orbit,
    translate,
)
from shiftlab.errors import InvalidNeighbourhoodError, MalformedInputError, ResourceLimitError

INFINITE = ["Z", "Z2", "free:2", "Dinf"]


def random_cell(space, data, radius=4):
    cells = space.ball(space.origin, radius).ordered
    return data.draw(st.sampled_from(cells))


# -- examples ------------------------------------------------------------------

def test_semi_act_examples():
    Z = get_space("Z")
    assert semi_act(Z, 3, "+1") == 4
    assert semi_act(get_space("Dinf"), 2, "+1") == 3
    for name in INFINITE:
        space = get_space(name)
        m = space.ball(space.origin, 2).ordered[-1]
        assert semi_act(space, m, "") == m


def test_unknown_generator():
    with pytest.raises(MalformedInputError):
        semi_act(get_space("Z"), 0, "+2")
    with pytest.raises(MalformedInputError):
        get_space("H3")


def test_distance_examples():
    Z = get_space("Z")
    assert distance(Z, -2, 3) == 5
    assert distance(Z, 7, 7) == 0
    F2 = get_space("free:2")
    assert distance(F2, F2.parse_cell("a.b"), F2.parse_cell("a.B")) == 2


def test_ball_examples():
    Z = get_space("Z")
    assert list(ball(Z, 0, 2)) == [-2, -1, 0, 1, 2]
    F2 = get_space("free:2")
    assert len(ball(F2, (), 2)) == 17
    for name in INFINITE:
        space = get_space(name)
        assert list(sphere(space, space.origin, 0)) == [space.origin]


def test_ball_sizes_match_bfs():
    for name in INFINITE + ["Dinf:translations"]:
        space = get_space(name)
        for rho in range(5):
            assert len(space.bfs_ball(space.origin, rho)) == space.ball_size(rho)


def test_resource_guard():
    with pytest.raises(ResourceLimitError):
        ball(get_space("free:2"), (), 30)


def test_interval_calculus_examples():
    Z = get_space("Z")
    A = CellSet(Z, range(0, 6))
    assert interior(Z, A, 1) == set(range(1, 5))
    assert closure(Z, A, 1) == set(range(-1, 7))
    assert internal_boundary(Z, A, 1) == {0, 5}
    assert external_boundary(Z, A, 1) == {-1, 6}
    assert boundary(Z, A, 1) == {-1, 0, 5, 6}
    assert interior(Z, A, 0) == A == closure(Z, A, 0)
    Z2 = get_space("Z2")
    assert closure(Z2, ball(Z2, (0, 0), 2), 1) == ball(Z2, (0, 0), 3)


def test_stabiliser_orbit():
    Z = get_space("Z")
    assert stabiliser_orbit(Z, [-1, 0, 1]) == [(0, 1, 2)]
    D = get_space("Dinf")
    assert stabiliser_orbit(D, [-1, 0, 1]) == [(0, 1, 2), (2, 1, 0)]
    with pytest.raises(InvalidNeighbourhoodError):
        stabiliser_orbit(D, [0, 1])
    # translations only: H0 is trivial, but N must still be G0-closed
    assert stabiliser_orbit(get_space("Dinf:translations"), [-1, 0, 1]) == [(0, 1, 2)]


def test_canonical_order_is_deterministic():
    F2 = get_space("free:2")
    cells = list(ball(F2, (), 1))
    assert [F2.cell_str(c) for c in cells] == ["e", "a", "A", "b", "B"]
    assert list(CellSet(F2, reversed(cells))) == cells


def test_cycle_space():
    C = get_space("cycle:5")
    assert C.finite and len(C.cells) == 5
    assert distance(C, 0, 4) == 1
    assert len(ball(C, 0, 10)) == 5


def test_cell_round_trip():
    for name in INFINITE:
        space = get_space(name)
        for c in space.ball(space.origin, 3):
            assert space.parse_cell(space.cell_str(c)) == c


# -- properties ----------------------------------------------------------------

@pytest.mark.parametrize("name", INFINITE)
@given(data=st.data())
def test_metric_laws(name, data):
    space = get_space(name)
    a, b, c = (random_cell(space, data) for _ in range(3))
    assert distance(space, a, b) == distance(space, b, a)
    assert distance(space, a, c) <= distance(space, a, b) + distance(space, b, c)
    assert (distance(space, a, b) == 0) == (a == b)
    # distance agrees with breadth-first search
    assert space.bfs_ball(a, 8)[b] == distance(space, a, b)


@pytest.mark.parametrize("name", INFINITE)
@given(data=st.data(), theta=st.integers(0, 3), theta2=st.integers(0, 2))
def test_interior_closure_calculus(name, data, theta, theta2):
    space = get_space(name)
    pool = space.ball(space.origin, 3).ordered
    A = CellSet(space, data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=12)))
    inner, outer = interior(space, A, theta), closure(space, A, theta)
    assert inner <= A <= outer
    assert closure(space, outer, theta2) == closure(space, A, theta + theta2)
    m = random_cell(space, data, 2)
    assert closure(space, ball(space, m, theta), theta2) == ball(space, m, theta + theta2)
    assert translate(space, m, ball(space, space.origin, theta)) == ball(space, m, theta)
    # boundary identities
    assert boundary(space, A, theta) == outer - inner
    assert internal_boundary(space, A, theta) | external_boundary(space, A, theta) == boundary(space, A, theta)


@pytest.mark.parametrize("name", INFINITE)
@given(data=st.data(), rho=st.integers(0, 5))
def test_homogeneity(name, data, rho):
    space = get_space(name)
    m = random_cell(space, data, 5)
    assert len(ball(space, m, rho)) == space.ball_size(rho)


@pytest.mark.parametrize("name", INFINITE)
@pytest.mark.parametrize("rho", [0, 3, 6])
def test_semi_action_identity_and_injective_on_balls(name, rho):
    if name == "free:2" and rho == 6:
        rho = 4
    space = get_space(name)
    B = space.ball(space.origin, rho)
    for m in space.ball(space.origin, 2):
        images = [space.act(m, a) for a in B]
        assert len(set(images)) == len(images)
        assert set(images) == set(ball(space, m, rho))
        assert space.act(m, space.origin) == m
    for h in space.stabiliser:
        assert space.stab_act(h, space.origin) == space.origin
