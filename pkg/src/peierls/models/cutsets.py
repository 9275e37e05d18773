"""
Models for minimal cut-set censuses and the resulting Peierls bound
"""
from enum import auto
from typing import List, Optional

from pydantic import BaseModel, Field

from peierls.models.manifest import RunManifest
from peierls.models.paths import RecursionBoundReport
from peierls.models.profile import ConstantsProfile
from peierls.models.utils import SCHEMA_VERSION, AutoNamedEnum


class CensusMethod(AutoNamedEnum):
    """
    How the minimal cut-sets were found:

    - **direct**: boundaries of connected regions with connected complement
    - **via_dual**: simple dual cycles enclosing the vertex
    """

    direct = auto()
    via_dual = auto()


class CensusRow(BaseModel):
    """ N(v; n), the number of minimal cut-sets of size n """

    n: int
    count: int


class CutsetCensus(BaseModel):
    """ Every minimal cut-set of v of size at most n_max within the window """

    version: int = SCHEMA_VERSION
    vertex: int
    n_max: int
    method: CensusMethod
    counts: List[CensusRow] = []
    cutsets: List[List[int]] = Field(
        [], description="The cut-sets as sorted primal edge ids, sorted"
    )
    region_limit: Optional[int] = Field(
        None, description="Largest finite side searched, null when unbounded"
    )
    certified: bool = Field(
        False,
        description="Whether the constants place v far enough from the unbounded "
        "face for the census to miss no cut-set",
    )
    explored: int = Field(0, description="Connected sets or dual paths explored")
    manifest: Optional[RunManifest] = None

    def count(self, n: int) -> int:
        """ N(v; n), zero outside the census """
        # pylint:disable=not-an-iterable
        return next((row.count for row in self.counts if row.n == n), 0)


class BoundRow(BaseModel):
    """ The counting bound K²(2n/k)^{D/ε}·p(n − 1) next to the exact census """

    n: int
    bound: float
    census: Optional[int] = None


class PeierlsBound(BaseModel):
    """
    The geometric majorant N(n) ≤ A·growth^n and the threshold it implies: for
    p > p_star the expected number of closed cut-sets of v is below one.
    """

    A: float
    growth: float = Field(..., description="Exponential rate of the cut-set count")
    n0: int = Field(..., description="Smallest cut-set size, the degree of v")
    head: List[int] = Field([], description="Exact counts used for n0, n0 + 1, ...")
    p_star: float
    rows: List[BoundRow] = []


class BoundReport(BaseModel):
    """
    The full provenance chain of a Peierls threshold, or the reason none exists
    """

    version: int = SCHEMA_VERSION
    constants: ConstantsProfile
    recursion: Optional[RecursionBoundReport] = None
    C: Optional[float] = Field(None, description="p(n) ≤ exp(C·n) on the window")
    peierls: Optional[PeierlsBound] = None
    p_star: Optional[float] = None
    refusal: Optional[str] = Field(
        None, description="Why no threshold was emitted (hypotheses fail)"
    )
    manifest: Optional[RunManifest] = None
