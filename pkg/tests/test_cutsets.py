"""Test the minimal cut-set censuses and the Peierls threshold"""
import math

import pytest

from peierls.graph.cutsets import (
    _complement_connected,
    enumerate_cutsets_direct,
    enumerate_cutsets_via_dual,
    peierls_count_bound,
    peierls_threshold,
    threshold_from_constants,
)
from peierls.graph.dual import dualize, is_minimal_cutset
from peierls.graph.lattices import make_grid_ball, make_grid_box, make_triangular_ball
from peierls.graph.paths import bound_constant
from peierls.models.cutsets import CensusMethod
from peierls.models.paths import PathCountRow, PathCountTable
from peierls.utils.errors import (
    GuardExceededError,
    HypothesisError,
    MalformedInputError,
    WindowError,
)


def test_the_center_of_a_three_by_three_box_has_one_small_cut(box3):
    for census in (
        enumerate_cutsets_direct(box3, box3.center, 4),
        enumerate_cutsets_via_dual(box3, dualize(box3), box3.center, 4),
    ):
        assert [row.count for row in census.counts] == [0, 0, 0, 1]
        assert census.cutsets == [box3.boundary([box3.center])]
        assert census.region_limit is None


def test_censuses_agree_in_a_five_by_five_box(box5):
    direct = enumerate_cutsets_direct(box5, box5.center, 8)
    via_dual = enumerate_cutsets_via_dual(box5, dualize(box5), box5.center, 8)

    assert direct.method is CensusMethod.direct
    assert via_dual.method is CensusMethod.via_dual
    assert direct.cutsets == via_dual.cutsets
    assert [direct.count(n) for n in (4, 6, 8)] == [1, 4, 18]


def test_square_lattice_census(grid_ball, grid_constants):
    census = enumerate_cutsets_direct(grid_ball, 0, 8, constants=grid_constants)
    assert census.region_limit == 4
    assert [census.count(n) for n in range(1, 9)] == [0, 0, 0, 1, 0, 4, 0, 22]
    for cut in census.cutsets:
        assert is_minimal_cutset(grid_ball, 0, cut)

    via_dual = enumerate_cutsets_via_dual(
        grid_ball, dualize(grid_ball), 0, 8, constants=grid_constants
    )
    assert via_dual.cutsets == census.cutsets


def test_triangular_lattice_censuses_agree(constants_factory):
    emb = make_triangular_ball(4)
    constants = constants_factory(K=7.0, k=6.0, degree=6)
    direct = enumerate_cutsets_direct(emb, 0, 12, constants=constants)
    via_dual = enumerate_cutsets_via_dual(emb, dualize(emb), 0, 12, constants=constants)
    assert direct.region_limit == 4
    # The vertex, its six edges and its six triangles
    assert [direct.count(n) for n in (6, 10, 12)] == [1, 6, 6]
    assert direct.cutsets == via_dual.cutsets


@pytest.mark.slow
def test_censuses_agree_in_a_seven_by_seven_box(grid_constants):
    box = make_grid_box(7, 7)
    direct = enumerate_cutsets_direct(
        box, box.center, 8, constants=grid_constants, require_margin=False
    )
    via_dual = enumerate_cutsets_via_dual(
        box, dualize(box), box.center, 8, constants=grid_constants, require_margin=False
    )
    assert direct.cutsets == via_dual.cutsets
    assert [direct.count(n) for n in range(1, 9)] == [0, 0, 0, 1, 0, 4, 0, 22]


def test_censuses_agree_on_the_triangular_ball_of_radius_two(constants_factory):
    emb = make_triangular_ball(2)
    constants = constants_factory(K=7.0, k=6.0, degree=6)
    direct = enumerate_cutsets_direct(emb, 0, 8, constants=constants)
    via_dual = enumerate_cutsets_via_dual(emb, dualize(emb), 0, 8, constants=constants)
    assert direct.certified and via_dual.certified
    assert direct.cutsets == via_dual.cutsets
    assert [direct.count(n) for n in range(1, 9)] == [0, 0, 0, 0, 0, 1, 0, 0]


def test_cuts_need_a_margin_from_the_unbounded_face(grid_constants):
    emb = make_grid_ball(3)
    with pytest.raises(WindowError) as error:
        enumerate_cutsets_direct(emb, 0, 8, constants=grid_constants)

    assert error.value.details == {"required_radius": 4, "available_radius": 2}

    census = enumerate_cutsets_direct(emb, 0, 8, constants=grid_constants, require_margin=False)
    assert census.count(4) == 1


def test_vertices_on_the_unbounded_face_have_no_cuts(box3):
    with pytest.raises(WindowError):
        enumerate_cutsets_direct(box3, 0, 4)
    with pytest.raises(MalformedInputError):
        enumerate_cutsets_direct(box3, box3.center, 0)
    with pytest.raises(MalformedInputError):
        enumerate_cutsets_via_dual(box3, dualize(make_grid_ball(2)), box3.center, 4)


def test_failed_hypotheses_cannot_bound_regions(box5, constants_factory):
    with pytest.raises(HypothesisError):
        enumerate_cutsets_direct(box5, box5.center, 4, constants=constants_factory(epsilon=0.0))


def test_census_guard(grid_ball):
    with pytest.raises(GuardExceededError):
        enumerate_cutsets_direct(grid_ball, 0, 8, guard=5)
    with pytest.raises(GuardExceededError):
        enumerate_cutsets_via_dual(grid_ball, dualize(grid_ball), 0, 8, guard=5)


def test_count_bound(grid_constants):
    assert peierls_count_bound(grid_constants, 1) == pytest.approx(25 * 0.5 ** 4)

    table = PathCountTable(window=[0], rows=[PathCountRow(n=3, value=7)])
    assert peierls_count_bound(grid_constants, 4, table=table) == pytest.approx(25 * 2 ** 4 * 7)
    assert peierls_count_bound(grid_constants, 4, C=1.0) == pytest.approx(
        25 * 2 ** 4 * math.exp(3)
    )

    with pytest.raises(MalformedInputError):
        peierls_count_bound(grid_constants, 4)
    with pytest.raises(MalformedInputError):
        peierls_count_bound(grid_constants, 0)


@pytest.mark.parametrize(
    "A, growth, n0, p_star", [(1.0, 2.0, 1, 0.75), (1.0, 1.0, 1, 0.5)]
)
def test_threshold_of_a_geometric_series(A, growth, n0, p_star):
    assert peierls_threshold(A, growth, n0) == pytest.approx(p_star, abs=1e-9)


def test_threshold_with_an_exact_head():
    # A single cut of size one can only be avoided with certainty
    p_star = peierls_threshold(1e-300, 1.0, 1, head=[1])
    assert p_star == pytest.approx(0.0, abs=1e-6)

    with pytest.raises(MalformedInputError):
        peierls_threshold(0.0, 2.0, 1)
    with pytest.raises(MalformedInputError):
        peierls_threshold(1.0, 0.0, 1)
    with pytest.raises(MalformedInputError):
        peierls_threshold(1.0, 2.0, 0)


def test_square_lattice_threshold(grid_ball, grid_constants):
    C = bound_constant(grid_constants, 40)
    bound = threshold_from_constants(grid_constants, C, 4)
    assert 0.5 < bound.p_star < 1
    assert bound.growth == pytest.approx(2 * math.exp(C))
    assert [row.n for row in bound.rows] == list(range(1, 9))
    assert all(row.census is None for row in bound.rows)

    census = enumerate_cutsets_direct(grid_ball, 0, 8, constants=grid_constants)
    refined = threshold_from_constants(grid_constants, C, 4, census=census)
    assert refined.head == [1, 0, 4, 0, 22]
    assert refined.p_star <= bound.p_star + 1e-12
    assert [row.census for row in refined.rows][3:] == [1, 0, 4, 0, 22]


def test_threshold_refuses_failed_hypotheses(constants_factory):
    with pytest.raises(HypothesisError):
        threshold_from_constants(constants_factory(epsilon=0.0), 1.0, 2)


def test_only_certified_censuses_refine_the_threshold(grid_ball, grid_constants, box3):
    C = bound_constant(grid_constants, 40)
    census = enumerate_cutsets_direct(grid_ball, 0, 8, constants=grid_constants)
    assert census.certified

    truncated = enumerate_cutsets_direct(
        make_grid_ball(3), 0, 8, constants=grid_constants, require_margin=False
    )
    assert not truncated.certified
    with pytest.raises(HypothesisError):
        threshold_from_constants(grid_constants, C, 4, census=truncated)

    unbounded = enumerate_cutsets_direct(box3, box3.center, 4)
    assert not unbounded.certified
    with pytest.raises(HypothesisError):
        threshold_from_constants(grid_constants, C, 4, census=unbounded)

    elsewhere = grid_constants.copy(update={"vertex": 1})
    with pytest.raises(HypothesisError):
        threshold_from_constants(elsewhere, C, 4, census=census)


def test_regions_with_disconnected_complements_are_not_cuts(box3):
    center = box3.center
    assert _complement_connected(box3, {center})
    assert _complement_connected(box3, set(range(box3.num_vertices)))

    opposite = box3.rotation[center][0], box3.rotation[center][2]
    assert not _complement_connected(box3, {center, *opposite})
