"""Test the growth and isoperimetric measurements"""
import pytest
from hypothesis import given, settings, strategies as st

from peierls.graph.lattices import make_grid_ball, make_path, make_triangular_ball
from peierls.graph.profiles import (
    connected_sets,
    fit_growth,
    fit_isoperimetry,
    growth_profile,
    min_boundary,
    min_boundary_table,
    profile,
    snap_epsilon,
)
from peierls.models.profile import BoundaryRow, ProfileFlag
from peierls.utils.errors import GuardExceededError, MalformedInputError, WindowError

# min |∂S| over connected S ∋ v, |S| = 1, 2, ...
SQUARE_MIN_BOUNDARY = [4, 6, 8, 8, 10, 10, 12, 12, 12]
TRIANGULAR_MIN_BOUNDARY = [6, 10, 12, 14, 16, 18, 18]


def test_connected_sets_are_enumerated_once(grid_ball):
    seen = [tuple(sorted(members)) for members, _ in connected_sets(grid_ball, 0, 3)]
    assert len(seen) == len(set(seen))
    # 1 monomino, 4 dominoes and 18 trominoes contain a given cell
    assert len(seen) == 23
    assert all(0 in members for members in seen)


def test_connected_sets_track_the_boundary():
    emb = make_triangular_ball(3)
    for members, boundary in connected_sets(emb, emb.center, 4):
        assert boundary == len(emb.boundary(members))


def test_connected_sets_respect_blocked_vertices(grid_ball):
    blocked = frozenset(grid_ball.neighbors(0))
    sets = [list(members) for members, _ in connected_sets(grid_ball, 0, 5, blocked=blocked)]
    assert sets == [[0]]
    assert not list(connected_sets(grid_ball, 0, 5, blocked=frozenset([0])))


def test_connected_sets_guard(grid_ball):
    with pytest.raises(GuardExceededError) as error:
        list(connected_sets(grid_ball, 0, 4, guard=3))

    assert error.value.details["explored"] == 3


def test_growth_of_the_square_lattice():
    rows = growth_profile(make_grid_ball(8), 0, 8)
    assert [row.count for row in rows] == [2 * r * r + 2 * r + 1 for r in range(1, 9)]
    assert fit_growth(rows) == (5.0, 2)


def test_growth_of_the_triangular_lattice():
    rows = growth_profile(make_triangular_ball(6), 0, 6)
    assert [row.count for row in rows] == [3 * r * r + 3 * r + 1 for r in range(1, 7)]
    assert fit_growth(rows) == (7.0, 2)


def test_growth_window_cannot_reach_the_rim():
    with pytest.raises(WindowError) as error:
        growth_profile(make_grid_ball(3), 0, 4)

    assert error.value.details == {"required_radius": 4, "available_radius": 3}


def test_square_min_boundaries(grid_ball):
    rows = min_boundary_table(grid_ball, 0, 6)
    assert [row.boundary for row in rows] == SQUARE_MIN_BOUNDARY[:6]
    assert all(len(row.members) == row.size for row in rows)
    assert all(0 in row.members for row in rows)


@pytest.mark.slow
def test_square_isoperimetry_is_two_dimensional():
    rows = min_boundary_table(make_grid_ball(9), 0, 9)
    assert [row.boundary for row in rows] == SQUARE_MIN_BOUNDARY

    k, epsilon, slope, flags = fit_isoperimetry(rows)
    assert epsilon == 0.5
    assert k == pytest.approx(4.0)
    assert 0.45 < slope < 0.55
    assert not flags


@pytest.mark.slow
def test_triangular_isoperimetry_is_two_dimensional():
    rows = min_boundary_table(make_triangular_ball(7), 0, 7)
    assert [row.boundary for row in rows] == TRIANGULAR_MIN_BOUNDARY

    k, epsilon, _, flags = fit_isoperimetry(rows)
    assert epsilon == 0.5
    assert k == pytest.approx(6.0)
    assert not flags


def test_min_boundary_region(grid_ball):
    region = min_boundary(grid_ball, 0, 4)
    assert region.size == 4
    assert region.perimeter == 8
    assert region.connected


def test_min_boundary_window_and_guard():
    with pytest.raises(WindowError):
        min_boundary_table(make_grid_ball(3), 0, 5)
    with pytest.raises(GuardExceededError):
        min_boundary_table(make_grid_ball(20), 0, 13)
    with pytest.raises(MalformedInputError):
        min_boundary_table(make_grid_ball(3), 0, 0)


@pytest.mark.parametrize(
    "slope, epsilon",
    [(0.5, 0.5), (0.57, 0.5), (0.63, 2 / 3), (0.96, 1.0), (0.0, 0.0), (-0.2, 0.0)],
)
def test_snap_epsilon(slope, epsilon):
    assert snap_epsilon(slope) == pytest.approx(epsilon)


@given(st.floats(min_value=-1, max_value=2))
def test_snapped_exponents_are_dimension_fractions(slope):
    epsilon = snap_epsilon(slope)
    assert 0 <= epsilon <= 1
    assert epsilon <= slope + 0.05 + 1e-9 or epsilon == 0
    if epsilon < 1:
        dimension = 1 / (1 - epsilon)
        assert dimension == pytest.approx(round(dimension))


def test_single_point_fit_is_flagged():
    k, epsilon, slope, flags = fit_isoperimetry([BoundaryRow(size=1, boundary=4)])
    assert (k, epsilon, slope) == (4.0, 1.0, None)
    assert flags == [ProfileFlag.insufficient_window]


def test_forced_exponent():
    rows = [BoundaryRow(size=s, boundary=b) for s, b in zip(range(1, 7), SQUARE_MIN_BOUNDARY)]
    k, epsilon, _, _ = fit_isoperimetry(rows, epsilon=1.0)
    assert epsilon == 1.0
    assert k == pytest.approx(10 / 6)

    with pytest.raises(MalformedInputError):
        fit_isoperimetry(rows, epsilon=1.5)
    with pytest.raises(MalformedInputError):
        fit_isoperimetry([])


def test_path_fails_the_isoperimetric_hypothesis():
    emb = make_path(21)
    constants = profile(emb, emb.center, 5, 5)
    assert constants.epsilon == 0.0
    assert constants.k == 2.0
    assert constants.D == 1
    assert ProfileFlag.hypotheses_fail in constants.flags
    assert not constants.hypotheses_hold
    assert constants.dimension == 1.0


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=2, max_value=5))
def test_grid_profiles_hold_the_hypotheses(radius):
    emb = make_grid_ball(radius)
    constants = profile(emb, 0, radius, min(radius, 4))
    assert constants.hypotheses_hold
    assert constants.D == 2
    assert constants.window.r_max == radius
    assert constants.growth[0].count == 5
    for row in constants.isoperimetry:
        assert row.boundary >= constants.k * row.size ** constants.epsilon - 1e-9
