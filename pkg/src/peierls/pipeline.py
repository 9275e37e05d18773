"""
The pipeline stages shared by the command line and the HTTP routers. Each stage
takes a request model, delegates to exactly one operation of the graph package
and returns the output model with its run manifest embedded.
"""
import json
import logging
from typing import Iterable, Optional

from pydantic import BaseModel

from peierls.graph import cutsets as cutset_ops
from peierls.graph import percolation as percolation_ops
from peierls.graph import profiles as profile_ops
from peierls.graph.dual import DualGraph, dualize as build_dual
from peierls.graph.embedding import PlanarEmbedding
from peierls.graph.executor import WorkerPool
from peierls.graph.lattices import make_family
from peierls.graph.paths import bound_constant, check_recursion, path_table
from peierls.models.cutsets import BoundReport, CensusMethod, CutsetCensus
from peierls.models.graph import DualFile, GraphFile
from peierls.models.manifest import RunManifest
from peierls.models.parsing import parse_grid, parse_vertex
from peierls.models.paths import PathCountTable
from peierls.models.percolation import ConfrontReport, SweepResult
from peierls.models.profile import ConstantsProfile
from peierls.models.requests import (
    BoundRequest,
    ConfrontRequest,
    CutsetsRequest,
    DualizeRequest,
    GenerateRequest,
    PathsRequest,
    PercolateRequest,
    ProfileRequest,
)
from peierls.utils import digest
from peierls.utils.errors import MalformedInputError


def manifest(
    subcommand: str,
    request: BaseModel,
    inputs: Iterable[str] = (),
    seed: Optional[int] = None,
) -> RunManifest:
    """
    Describe a stage run: scalar parameters verbatim, input models by the sha256
    digest of their JSON.
    """
    inputs = tuple(inputs)
    return RunManifest(
        subcommand=subcommand,
        parameters=json.loads(request.json(exclude=set(inputs))),
        seed=seed,
        inputs={
            name: digest(getattr(request, name).json())
            for name in inputs
            if getattr(request, name) is not None
        },
    )


def generate(request: GenerateRequest) -> GraphFile:
    """ Generate a graph family member """
    emb = make_family(request.family, request.radius, request.width, request.height)
    logging.info("Generated %r", emb)
    return emb.to_model(manifest("generate", request))


def dualize(request: DualizeRequest) -> DualFile:
    """ Build G* and the star map """
    dual = build_dual(PlanarEmbedding.from_model(request.graph))
    return dual.to_model(manifest("dualize", request, inputs=("graph",)))


def profile(request: ProfileRequest) -> ConstantsProfile:
    """ Measure (K, D) and (k, ε) """
    emb = PlanarEmbedding.from_model(request.graph)
    vertex = parse_vertex(request.vertex, emb.center)
    result = profile_ops.profile(
        emb, vertex, request.r_max, request.s_max, epsilon=request.epsilon
    )
    result.manifest = manifest("profile", request, inputs=("graph",))
    return result


def cutsets(request: CutsetsRequest) -> CutsetCensus:
    """ Census of minimal cut-sets by either method """
    emb = PlanarEmbedding.from_model(request.graph)
    vertex = parse_vertex(request.vertex, emb.center)
    if request.method is CensusMethod.via_dual:
        census = cutset_ops.enumerate_cutsets_via_dual(
            emb,
            build_dual(emb),
            vertex,
            request.n_max,
            constants=request.profile,
            require_margin=request.margin,
        )
    else:
        census = cutset_ops.enumerate_cutsets_direct(
            emb,
            vertex,
            request.n_max,
            constants=request.profile,
            require_margin=request.margin,
        )

    census.manifest = manifest("cutsets", request, inputs=("graph", "profile"))
    return census


def paths(request: PathsRequest, pool: Optional[WorkerPool] = None) -> PathCountTable:
    """ Exact p(n), p(2n) and p(n − 1) """
    table = path_table(
        DualGraph.from_model(request.dual),
        request.n_list,
        window=request.window,
        method=request.method,
        pool=pool,
    )
    table.manifest = manifest("paths", request, inputs=("dual",))
    return table


def _degree(constants: ConstantsProfile) -> int:
    """ deg(v) = |B(v, 1)| − 1, the size of the smallest cut-set of v """
    # pylint:disable=not-an-iterable
    count = next((row.count for row in constants.growth if row.radius == 1), None)
    if count is None:
        raise MalformedInputError("The profile lacks the radius 1 ball count!")

    return count - 1


def bound(request: BoundRequest) -> BoundReport:
    """
    Combine the constants, the exact path counts and optionally the census into
    p_star. Constants violating the hypotheses produce a refusal instead.
    """
    constants = request.profile
    stamp = manifest("bound", request, inputs=("profile", "paths", "census"))
    if not constants.hypotheses_hold:
        logging.warning("Refusing to bound: the hypotheses fail for these constants")
        return BoundReport(
            constants=constants,
            refusal="hypotheses fail: the isoperimetric exponent is zero",
            manifest=stamp,
        )

    table = request.paths
    recursion = None
    if table is not None and not request.skip_recursion:
        n_list = [
            row.n
            for row in table.rows  # pylint:disable=not-an-iterable
            if table.count(2 * row.n) is not None
        ]
        if n_list:
            recursion = check_recursion(None, constants, n_list, table=table)

    isoperimetric = (2 / constants.k) ** (1 / constants.epsilon)
    exact = table.count(1) if table is not None else None
    C = bound_constant(constants, request.horizon, base=max(isoperimetric, exact or 0))

    peierls = cutset_ops.threshold_from_constants(
        constants, C, _degree(constants), census=request.census, table=table
    )
    for row in peierls.rows:
        if row.census is not None and row.census > row.bound:
            logging.warning("Census %d exceeds the bound at n=%d", row.census, row.n)

    return BoundReport(
        constants=constants,
        recursion=recursion,
        C=C,
        peierls=peierls,
        p_star=peierls.p_star,
        manifest=stamp,
    )


def percolate(request: PercolateRequest, pool: Optional[WorkerPool] = None) -> SweepResult:
    """ Sweep the p-grid and locate the crossing """
    emb = PlanarEmbedding.from_model(request.graph)
    vertex = parse_vertex(request.vertex, emb.center)
    grid = parse_grid(request.grid) if isinstance(request.grid, str) else request.grid

    window = percolation_ops.CrossingWindow(emb, vertex, request.radius)
    result = percolation_ops.sweep(window, grid, request.trials, request.seed, pool=pool)
    result.estimate = percolation_ops.estimate_pc(result)
    result.manifest = manifest(
        "percolate", request, inputs=("graph",), seed=request.seed
    )
    return result


def confront(request: ConfrontRequest) -> ConfrontReport:
    """ Check the empirical crossing against p_star """
    estimate = request.sweep.estimate or percolation_ops.estimate_pc(request.sweep)
    report = percolation_ops.confront(estimate, request.bound.p_star)
    report.manifest = manifest("confront", request, inputs=("bound", "sweep"))
    return report
