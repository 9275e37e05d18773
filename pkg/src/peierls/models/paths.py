"""
Models for simple-path counts in the dual and the doubling recursion
"""
from enum import auto
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from peierls.models.manifest import RunManifest
from peierls.models.utils import SCHEMA_VERSION, AutoNamedEnum


class PathMethod(AutoNamedEnum):
    """
    The two independent exact counters:

    - **edges**: depth-first search over per-face adjacency lists
    - **darts**: depth-first search walking the face boundary darts
    """

    edges = auto()
    darts = auto()


class PathCountRow(BaseModel):
    """ p(n) = max over ordered pairs of the window of p(a*, b*; n) """

    n: int = Field(..., ge=0)
    value: int = Field(..., ge=0)
    pair: Optional[Tuple[int, int]] = Field(
        None, description="The lexicographically first pair attaining the maximum"
    )


class PathCountTable(BaseModel):
    """ Exact p(n) for a set of path lengths """

    version: int = SCHEMA_VERSION
    window: List[int] = Field(..., description="Dual vertices the pairs range over")
    method: PathMethod = PathMethod.edges
    rows: List[PathCountRow] = []
    manifest: Optional[RunManifest] = None

    def count(self, n: int) -> Optional[int]:
        """ The stored p(n); p(0) is 1, the empty path """
        if n == 0:
            return 1

        # pylint:disable=not-an-iterable
        return next((row.value for row in self.rows if row.n == n), None)


class RecursionRow(BaseModel):
    """ One instance of p(2n) ≤ 8n·K²·(8n/k)^{D/ε}·p(n)² """

    n: int
    lhs: int
    rhs: float
    slack: Optional[float] = Field(None, description="rhs / lhs, null when lhs = 0")
    holds: bool


class RecursionBoundReport(BaseModel):
    """ The doubling recursion checked against exact counts """

    version: int = SCHEMA_VERSION
    rows: List[RecursionRow] = []
    p1_bound: float = Field(..., description="The base case bound (2/k)^{1/ε}")
    p1_exact: Optional[int] = Field(None, description="The exact p(1)")
    window_insufficient: bool = Field(
        False, description="Some instance failed, so the constants' window is too small"
    )
    manifest: Optional[RunManifest] = None
