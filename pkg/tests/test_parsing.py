"""Test the compact parameter parsers"""
import pytest
from hypothesis import given, strategies as st

from peierls.models.parsing import parse_grid, parse_lengths, parse_vertex
from peierls.utils.errors import MalformedInputError


def test_grid_range_is_inclusive_and_exact():
    grid = parse_grid("0.30-0.70:0.01")
    assert len(grid) == 41
    assert grid[0] == 0.3
    assert grid[1] == 0.31
    assert grid[-1] == 0.7


def test_grid_list():
    assert parse_grid("0.1, 0.5,1") == [0.1, 0.5, 1.0]
    assert parse_grid(".25") == [0.25]


@pytest.mark.parametrize(
    "value", ["0.7-0.3:0.1", "0.1-0.5:0", "0.5,0.1", "1.5", "0.2-1.2:0.5", "p=0.5", ""]
)
def test_bad_grids(value):
    with pytest.raises(MalformedInputError):
        parse_grid(value)


@given(st.lists(st.integers(min_value=0, max_value=100), min_size=1, unique=True))
def test_grid_lists_of_percentages(percents):
    percents = sorted(percents)
    grid = parse_grid(",".join(str(p / 100) for p in percents))
    assert grid == [p / 100 for p in percents]


def test_lengths():
    assert parse_lengths("1,2,4") == [1, 2, 4]
    assert parse_lengths("1-4") == [1, 2, 3, 4]
    assert parse_lengths("6,1-3,2") == [1, 2, 3, 6]


@pytest.mark.parametrize("value", ["0", "0-3", "a", "1,,2", "-1"])
def test_bad_lengths(value):
    with pytest.raises(MalformedInputError):
        parse_lengths(value)


def test_vertices():
    assert parse_vertex("center", 7) == 7
    assert parse_vertex(" 12 ", 0) == 12
    assert parse_vertex(5, 0) == 5

    with pytest.raises(MalformedInputError):
        parse_vertex("middle", 0)
