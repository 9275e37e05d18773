"""
This router exposes the pipeline stages. Stage outputs are cached by the digest
of the request, which determines the run manifest.
"""
from typing import Any, Callable

from aiocache import caches
from fastapi import APIRouter, Body, HTTPException
from pydantic import BaseModel
from starlette.status import HTTP_200_OK

from peierls import pipeline
from peierls.graph.executor import Workers
from peierls.models.cutsets import BoundReport, CutsetCensus
from peierls.models.graph import DualFile, GraphFile
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
from peierls.utils.errors import HypothesisError, PeierlsError

router = APIRouter()


async def run_stage(stage: str, fn: Callable[[Any], BaseModel], request: BaseModel):
    """
    Run a stage in the worker pool, serving repeated requests from the cache.
    Errors become HTTP errors carrying the machine-readable report.
    """
    cache = caches.get("default")
    key = f"{stage}:{digest(request.json())}"
    result = await cache.get(key)
    if result is not None:
        return result

    try:
        result = await Workers.run(fn, request)
    except PeierlsError as e:
        raise HTTPException(e.http_status, detail=e.report())

    await cache.set(key, result)
    return result


@router.post(
    "/graph/generate",
    status_code=HTTP_200_OK,
    summary="Generate a graph family member",
    response_model=GraphFile,
)
async def generate(request: GenerateRequest = Body(...)):
    """ Generate a lattice ball, box, path or cycle as a rotation system """
    return await run_stage("generate", pipeline.generate, request)


@router.post(
    "/graph/dualize",
    status_code=HTTP_200_OK,
    summary="Build the dual multigraph",
    response_model=DualFile,
)
async def dualize(request: DualizeRequest = Body(...)):
    """ Trace the faces of an embedding and build G* with its star map """
    return await run_stage("dualize", pipeline.dualize, request)


@router.post(
    "/profile",
    status_code=HTTP_200_OK,
    summary="Measure the growth and isoperimetric constants",
    response_model=ConstantsProfile,
)
async def profile(request: ProfileRequest = Body(...)):
    """
    Fit (K, D) and (k, ε) around a vertex. Returns a 409 if the window is too
    small and a 413 if the exhaustive search exceeds its guard.
    """
    return await run_stage("profile", pipeline.profile, request)


@router.post(
    "/cutsets",
    status_code=HTTP_200_OK,
    summary="Census of minimal cut-sets",
    response_model=CutsetCensus,
)
async def cutsets(request: CutsetsRequest = Body(...)):
    """ Count the minimal cut-sets of a vertex by size """
    return await run_stage("cutsets", pipeline.cutsets, request)


@router.post(
    "/paths",
    status_code=HTTP_200_OK,
    summary="Exact simple-path counts in the dual",
    response_model=PathCountTable,
)
async def paths(request: PathsRequest = Body(...)):
    """ Compute p(n) over the interior faces """
    return await run_stage("paths", pipeline.paths, request)


@router.post(
    "/bound",
    status_code=HTTP_200_OK,
    summary="Assemble the Peierls threshold",
    response_model=BoundReport,
)
async def bound(request: BoundRequest = Body(...)):
    """
    Combine constants and counts into p_star. Returns a 412 carrying the refusal
    when the constants violate the hypotheses.
    """
    report = await run_stage("bound", pipeline.bound, request)
    if report.refusal:
        error = HypothesisError(report.refusal)
        raise HTTPException(error.http_status, detail=error.report())

    return report


@router.post(
    "/percolate",
    status_code=HTTP_200_OK,
    summary="Monte Carlo sweep",
    response_model=SweepResult,
)
async def percolate(request: PercolateRequest = Body(...)):
    """ Estimate θ(p) on a grid and locate the crossing """
    return await run_stage("percolate", pipeline.percolate, request)


@router.post(
    "/confront",
    status_code=HTTP_200_OK,
    summary="Compare the crossing with p_star",
    response_model=ConfrontReport,
)
async def confront(request: ConfrontRequest = Body(...)):
    """ Returns a 500 if the empirical crossing lies above the rigorous bound """
    return await run_stage("confront", pipeline.confront, request)
