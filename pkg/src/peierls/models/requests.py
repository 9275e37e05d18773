"""
Request bodies of the pipeline stages. The command line builds the same models
from its flags, so both surfaces run identical code.
"""
from typing import List, Optional, Union

from pydantic import BaseModel, Field

from peierls.models.cutsets import BoundReport, CensusMethod, CutsetCensus
from peierls.models.graph import DualFile, Family, GraphFile
from peierls.models.paths import PathCountTable, PathMethod
from peierls.models.percolation import SweepResult
from peierls.models.profile import ConstantsProfile


class GenerateRequest(BaseModel):
    """ Generate a member of a graph family """

    family: Family = Field(..., description=Family.__doc__)
    radius: int = Field(..., ge=1)
    width: int = Field(0, ge=0, description="Box width, defaults to 2r + 1")
    height: int = Field(0, ge=0, description="Box height, defaults to 2r + 1")


class DualizeRequest(BaseModel):
    """ Build the dual of an embedding """

    graph: GraphFile


class ProfileRequest(BaseModel):
    """ Measure growth and isoperimetry around a vertex """

    graph: GraphFile
    r_max: int = Field(..., ge=1)
    s_max: int = Field(..., ge=1)
    vertex: Union[int, str] = "center"
    epsilon: Optional[float] = Field(
        None, ge=0, le=1, description="Force the isoperimetric exponent"
    )


class CutsetsRequest(BaseModel):
    """ Census of the minimal cut-sets of a vertex """

    graph: GraphFile
    n_max: int = Field(..., ge=1)
    vertex: Union[int, str] = "center"
    profile: Optional[ConstantsProfile] = Field(
        None, description="Constants bounding the size of the finite side"
    )
    method: CensusMethod = CensusMethod.direct
    margin: bool = Field(True, description="Require the margin the constants imply")


class PathsRequest(BaseModel):
    """ Exact p(n) in the dual """

    dual: DualFile
    n_list: List[int] = Field(..., min_items=1)
    method: PathMethod = PathMethod.edges
    window: Optional[List[int]] = None


class BoundRequest(BaseModel):
    """ Assemble the Peierls threshold from constants and path counts """

    profile: ConstantsProfile
    paths: Optional[PathCountTable] = None
    census: Optional[CutsetCensus] = None
    horizon: int = Field(40, ge=0)
    skip_recursion: bool = False


class PercolateRequest(BaseModel):
    """ Monte Carlo sweep over a probability grid """

    graph: GraphFile
    grid: Union[str, List[float]] = Field(..., description='e.g. "0.30-0.70:0.01"')
    trials: int = Field(..., ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    radius: Optional[int] = Field(None, ge=1)
    vertex: Union[int, str] = "center"


class ConfrontRequest(BaseModel):
    """ Compare an empirical sweep with a bound """

    bound: BoundReport
    sweep: SweepResult
