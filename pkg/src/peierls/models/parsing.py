"""
Parsers for the compact parameter strings accepted on the command line and over
HTTP: probability grids, lists of path lengths and vertex references.
"""
from typing import List, Union

import regex as re

from peierls.utils.errors import MalformedInputError

NUMBER_REGEX_STR = r"\d+(?:\.\d*)?|\.\d+"
GRID_RANGE_REGEX = re.compile(
    rf"(?P<start>{NUMBER_REGEX_STR})-(?P<stop>{NUMBER_REGEX_STR}):(?P<step>{NUMBER_REGEX_STR})"
)
GRID_LIST_REGEX = re.compile(rf"(?P<value>{NUMBER_REGEX_STR})(?:,(?P<value>{NUMBER_REGEX_STR}))*")
INTEGER_LIST_REGEX = re.compile(
    r"(?P<item>(?P<first>\d+)(?:-(?P<last>\d+))?)(?:,(?P<item>(?P<first>\d+)(?:-(?P<last>\d+))?))*"
)
VERTEX_REGEX = re.compile(r"(?P<center>center)|(?P<vertex>\d+)")

# Grid points are rounded so that "0.30-0.70:0.01" yields exactly 0.3, 0.31, ...
GRID_DIGITS = 10


def parse_grid(value: str) -> List[float]:
    """
    Parse a probability grid: either "start-stop:step" (inclusive) or a comma
    separated list of probabilities
    """
    text = value.replace(" ", "")
    match = GRID_RANGE_REGEX.fullmatch(text)
    if match:
        start, stop, step = (float(match[name]) for name in ("start", "stop", "step"))
        if step <= 0 or stop < start:
            raise MalformedInputError(f"Grid {value!r} is empty!")

        count = int(round((stop - start) / step)) + 1
        grid = [round(start + i * step, GRID_DIGITS) for i in range(count)]
    else:
        match = GRID_LIST_REGEX.fullmatch(text)
        if not match:
            raise MalformedInputError(f"Unable to parse grid {value!r}!")
        grid = [float(v) for v in match.captures("value")]

    if any(not 0 <= p <= 1 for p in grid) or grid != sorted(grid):
        raise MalformedInputError(f"Grid {value!r} must be sorted within [0, 1]!")

    return grid


def parse_lengths(value: str) -> List[int]:
    """ Parse a list of positive integers such as "1,2,4" or "1-4" """
    match = INTEGER_LIST_REGEX.fullmatch(value.replace(" ", ""))
    if not match:
        raise MalformedInputError(f"Unable to parse integer list {value!r}!")

    lengths = set()
    for item in match.captures("item"):
        first, _, last = item.partition("-")
        lengths.update(range(int(first), int(last or first) + 1))

    if 0 in lengths:
        raise MalformedInputError("Lengths must be positive!")

    return sorted(lengths)


def parse_vertex(value: Union[str, int], center: int) -> int:
    """ Resolve "center" or a vertex id """
    if isinstance(value, int):
        return value

    match = VERTEX_REGEX.fullmatch(value.strip())
    if not match:
        raise MalformedInputError(f"Unable to parse vertex {value!r}!")

    return center if match["center"] else int(match["vertex"])
