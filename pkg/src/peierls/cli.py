"""
Command line entry point. Every subcommand reads its inputs, builds the request
model of one pipeline stage, runs it and writes the output atomically with the
run manifest embedded.
"""
import argparse
import csv
import io
import logging
import sys
from functools import singledispatch
from typing import Callable, Dict, List, Optional, Sequence, Type, TypeVar

from pydantic import BaseModel, ValidationError

from peierls import __version__, pipeline
from peierls.graph.executor import WorkerPool
from peierls.models.cutsets import BoundReport, CensusMethod, CutsetCensus
from peierls.models.graph import DualFile, Family, GraphFile
from peierls.models.manifest import ErrorReport
from peierls.models.parsing import parse_lengths
from peierls.models.paths import PathCountTable, PathMethod
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
from peierls.utils import atomic_write
from peierls.utils.errors import HypothesisError, MalformedInputError, PeierlsError
from peierls.utils.settings import Settings

M = TypeVar("M", bound=BaseModel)


def load(path: str, model: Type[M]) -> M:
    """ Read and validate an input file """
    try:
        with open(path, "rt") as file:
            return model.parse_raw(file.read())
    except OSError as e:
        raise MalformedInputError(f"Unable to read {path}: {e.strerror}", path=path)
    except ValidationError as e:
        logging.warning("Rejected malformed %s file %s", model.__name__, path)
        raise MalformedInputError(f"Malformed input file {path}: {e}", path=path)


@singledispatch
def rows(model: BaseModel) -> List[List]:
    """ The plot-ready table of an output, header first """
    raise MalformedInputError(f"No CSV rendering for {type(model).__name__}!")


@rows.register
def _(model: GraphFile) -> List[List]:
    return [["vertex", "rotation"]] + [
        [v, " ".join(map(str, neighbors))] for v, neighbors in enumerate(model.rotation)
    ]


@rows.register
def _(model: DualFile) -> List[List]:
    return [["face", "edge_rotation", "interior"]] + [
        [face, " ".join(map(str, edges)), int(face in model.interior)]
        for face, edges in enumerate(model.edge_rotation)
    ]


@rows.register
def _(model: ConstantsProfile) -> List[List]:
    return (
        [["table", "x", "y"]]
        + [["growth", row.radius, row.count] for row in model.growth]
        + [["isoperimetry", row.size, row.boundary] for row in model.isoperimetry]
    )


@rows.register
def _(model: CutsetCensus) -> List[List]:
    return [["n", "count"]] + [[row.n, row.count] for row in model.counts]


@rows.register
def _(model: PathCountTable) -> List[List]:
    return [["n", "p", "a", "b"]] + [
        [row.n, row.value] + (list(row.pair) if row.pair else ["", ""])
        for row in model.rows
    ]


@rows.register
def _(model: BoundReport) -> List[List]:
    table: List[List] = [["kind", "n", "value", "reference"]]
    if model.peierls is not None:
        table += [
            ["bound", row.n, row.bound, "" if row.census is None else row.census]
            for row in model.peierls.rows
        ]
    if model.recursion is not None:
        table += [["recursion", row.n, row.lhs, row.rhs] for row in model.recursion.rows]

    return table


@rows.register
def _(model: SweepResult) -> List[List]:
    return [["p", "theta_hat", "ci_lo", "ci_hi", "trials"]] + [
        [row.p, row.theta, row.ci_low, row.ci_high, row.trials] for row in model.rows
    ]


@rows.register
def _(model: ConfrontReport) -> List[List]:
    return [
        ["quantity", "value"],
        ["p_star", model.p_star],
        ["estimate", model.estimate],
        ["ci_low", model.ci_low],
        ["ci_high", model.ci_high],
        ["margin", model.margin],
    ]


def render(model: BaseModel, output_format: str) -> str:
    """ Serialize an output as JSON or as CSV headed by its manifest """
    if output_format == "json":
        return model.json() + "\n"

    buffer = io.StringIO()
    manifest = getattr(model, "manifest", None)
    if manifest is not None:
        buffer.write(f"# manifest: {manifest.json()}\n")

    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows([["" if cell is None else cell for cell in row] for row in rows(model)])
    return buffer.getvalue()


def emit(model: BaseModel, args: argparse.Namespace):
    """ Write the output to --out (atomically) or stdout """
    out = getattr(args, "output", None) or args.out
    manifest = getattr(model, "manifest", None)
    if out and manifest is not None:
        manifest.outputs = {"out": out}

    text = render(model, args.format)
    if out:
        atomic_write(out, text)
        logging.info("Wrote %s", out)
    else:
        sys.stdout.write(text)


def _generate(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.generate(
        GenerateRequest(
            family=args.family, radius=args.radius, width=args.width, height=args.height
        )
    )


def _dualize(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.dualize(DualizeRequest(graph=load(args.input, GraphFile)))


def _profile(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.profile(
        ProfileRequest(
            graph=load(args.input, GraphFile),
            r_max=args.r_max,
            s_max=args.s_max,
            vertex=args.vertex,
            epsilon=args.epsilon,
        )
    )


def _cutsets(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.cutsets(
        CutsetsRequest(
            graph=load(args.input, GraphFile),
            n_max=args.n_max,
            vertex=args.vertex,
            profile=load(args.profile, ConstantsProfile) if args.profile else None,
            method=args.method,
            margin=args.margin,
        )
    )


def _paths(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.paths(
        PathsRequest(
            dual=load(args.input, DualFile),
            n_list=parse_lengths(args.n_list),
            method=args.method,
            window=parse_lengths(args.window) if args.window else None,
        ),
        pool=pool,
    )


def _bound(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.bound(
        BoundRequest(
            profile=load(args.profile, ConstantsProfile),
            paths=load(args.paths, PathCountTable) if args.paths else None,
            census=load(args.census, CutsetCensus) if args.census else None,
            horizon=args.horizon,
            skip_recursion=args.skip_recursion,
        )
    )


def _percolate(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.percolate(
        PercolateRequest(
            graph=load(args.input, GraphFile),
            grid=args.grid,
            trials=args.trials,
            seed=args.seed,
            radius=args.radius,
            vertex=args.vertex,
        ),
        pool=pool,
    )


def _confront(args: argparse.Namespace, pool: WorkerPool) -> BaseModel:
    return pipeline.confront(
        ConfrontRequest(
            bound=load(args.bound, BoundReport), sweep=load(args.sweep, SweepResult)
        )
    )


def _serve(args: argparse.Namespace, pool: WorkerPool) -> None:
    # Imported lazily, the batch subcommands do not need the web stack
    import uvicorn  # pylint:disable=import-outside-toplevel

    uvicorn.run("peierls.app:app", host=Settings.host, port=Settings.port)


def build_parser() -> argparse.ArgumentParser:
    """ The argument parser with one subparser per pipeline stage """
    parser = argparse.ArgumentParser(
        prog="peierls", description="Peierls bounds for planar percolation"
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument(
        "--threads", type=int, default=None, help="Worker processes, 0 for all cores"
    )
    parser.add_argument("--log-level", default=None, help="Root logger level")
    parser.add_argument("--out", default=None, help="Output path, stdout if omitted")

    subparsers = parser.add_subparsers(dest="command", required=True)
    handlers: Dict[str, Callable] = {}

    def add(name: str, handler: Callable, description: str) -> argparse.ArgumentParser:
        handlers[name] = handler
        return subparsers.add_parser(name, help=description, description=description)

    command = add("generate", _generate, "Generate a member of a graph family")
    command.add_argument("--family", choices=[f.value for f in Family], required=True)
    command.add_argument("--radius", type=int, required=True)
    command.add_argument("--width", type=int, default=0)
    command.add_argument("--height", type=int, default=0)

    command = add("dualize", _dualize, "Build the dual multigraph")
    command.add_argument("input")
    command.add_argument("output", nargs="?")

    command = add("profile", _profile, "Measure growth and isoperimetric constants")
    command.add_argument("input")
    command.add_argument("--r-max", type=int, required=True)
    command.add_argument("--s-max", type=int, required=True)
    command.add_argument("--vertex", default="center")
    command.add_argument("--epsilon", type=float, default=None)

    command = add("cutsets", _cutsets, "Census of the minimal cut-sets of a vertex")
    command.add_argument("input")
    command.add_argument("--n-max", type=int, required=True)
    command.add_argument("--vertex", default="center")
    command.add_argument("--profile", default=None, help="Constants bounding regions")
    command.add_argument(
        "--method", choices=[m.value for m in CensusMethod], default="direct"
    )
    command.add_argument("--no-margin", dest="margin", action="store_false")

    command = add("paths", _paths, "Exact simple-path counts in the dual")
    command.add_argument("input")
    command.add_argument("--n-list", required=True, help='e.g. "1,2,4"')
    command.add_argument("--method", choices=[m.value for m in PathMethod], default="edges")
    command.add_argument("--window", default=None, help="Dual vertices, e.g. 0-5,9")

    command = add("bound", _bound, "Assemble the Peierls threshold p_star")
    command.add_argument("profile")
    command.add_argument("paths", nargs="?")
    command.add_argument("--census", default=None)
    command.add_argument("--horizon", type=int, default=40)
    command.add_argument("--skip-recursion", action="store_true")

    command = add("percolate", _percolate, "Monte Carlo sweep over a p-grid")
    command.add_argument("input")
    command.add_argument("--grid", required=True, help='e.g. "0.30-0.70:0.01"')
    command.add_argument("--trials", type=int, required=True)
    command.add_argument("--seed", type=int, default=0)
    command.add_argument("--radius", type=int, default=None)
    command.add_argument("--vertex", default="center")

    command = add("confront", _confront, "Compare the crossing with p_star")
    command.add_argument("bound")
    command.add_argument("sweep")

    add("serve", _serve, "Run the HTTP service")

    parser.set_defaults(handlers=handlers)
    return parser


def fail(error: PeierlsError, stream=None) -> int:
    """ Report an error as JSON on stderr and return its exit status """
    report = ErrorReport(**error.report())
    (stream or sys.stderr).write(report.json() + "\n")
    return error.exit_status


def main(argv: Optional[Sequence[str]] = None) -> int:
    """ Run the command line, returning the exit status """
    parser = build_parser()
    args = parser.parse_args(argv)

    level = (args.log_level or Settings.log_level).upper()
    logging.basicConfig(level=level)
    logging.getLogger().setLevel(level)

    try:
        with WorkerPool(args.threads) as pool:
            result = args.handlers[args.command](args, pool)
            if result is None:
                return 0

            emit(result, args)
            if isinstance(result, BoundReport) and result.refusal:
                return fail(HypothesisError(result.refusal))
    except PeierlsError as e:
        return fail(e)
    except ValidationError as e:
        return fail(MalformedInputError(f"Invalid parameters: {e}"))

    return 0


if __name__ == "__main__":
    sys.exit(main())
