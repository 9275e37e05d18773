"""
Exact counts of simple paths in the dual multigraph and the doubling recursion
that turns them into an exponential bound.

A path of length n is a sequence of n dual edges with distinct vertices, so
parallel edges give distinct paths and loops never extend a path. p(a*, b*; n)
counts such paths from a* to b*, and p(n) is its maximum over a window.
"""
import logging
import math
from collections import Counter
from typing import AbstractSet, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from peierls.graph.dual import DualGraph
from peierls.graph.executor import WorkerPool
from peierls.models.paths import (
    PathCountRow,
    PathCountTable,
    PathMethod,
    RecursionBoundReport,
    RecursionRow,
)
from peierls.models.profile import ConstantsProfile
from peierls.utils.errors import (
    GuardExceededError,
    HypothesisError,
    MalformedInputError,
    WindowError,
)
from peierls.utils.settings import Settings


class _StepGuard:
    """ Counts dart-steps and aborts once the budget is spent """

    def __init__(self, limit: int):
        self.limit = limit
        self.steps = 0
        self.found = 0

    def step(self):
        """ Account for one step """
        self.steps += 1
        if self.steps > self.limit:
            logging.warning("Path enumeration exceeded %d dart-steps", self.limit)
            raise GuardExceededError(
                f"Path enumeration exceeded {self.limit} dart-steps!",
                steps=self.limit,
                partial=self.found,
            )


def _tally_by_edges(
    dual: DualGraph,
    source: int,
    n: int,
    blocked: AbstractSet[int],
    guard: _StepGuard,
    target: Optional[int] = None,
) -> Counter:
    """
    Endpoints of all simple paths of length n from source, by recursive search
    over the adjacency lists. With a target, branches that cannot reach it in the
    remaining steps are pruned.
    """
    tally: Counter = Counter()
    if source in blocked:
        return tally

    reach: Optional[Dict[int, int]] = None
    if target is not None:
        graph = nx.Graph(
            (a, b) for a, b in dual.edges if a not in blocked and b not in blocked
        )
        graph.add_node(target)
        reach = nx.single_source_shortest_path_length(graph, target, cutoff=n)

    visited = {source}

    def extend(face: int, remaining: int):
        if not remaining:
            tally[face] += 1
            guard.found += 1
            return
        if face == target:
            return

        for _, neighbor in dual.adjacency[face]:
            guard.step()
            if neighbor in visited or neighbor in blocked:
                continue
            if reach is not None and reach.get(neighbor, n + 1) > remaining - 1:
                continue

            visited.add(neighbor)
            extend(neighbor, remaining - 1)
            visited.discard(neighbor)

    extend(source, n)
    return tally


def _tally_by_darts(
    dual: DualGraph, source: int, n: int, blocked: AbstractSet[int], guard: _StepGuard
) -> Counter:
    """
    The same tally by an explicit-stack search that walks the edge rotation of
    each face, i.e. the darts of its boundary walk.
    """
    tally: Counter = Counter()
    if source in blocked:
        return tally

    path = [source]
    on_path = {source}
    stack = [iter(dual.edge_rotation[source])]
    while stack:
        edge = next(stack[-1], None)
        if edge is None:
            stack.pop()
            on_path.discard(path.pop())
            continue

        face = path[-1]
        guard.step()
        neighbor = dual.other_end(edge, face)
        if neighbor == face or neighbor in on_path or neighbor in blocked:
            continue

        if len(path) == n:
            tally[neighbor] += 1
            guard.found += 1
            continue

        path.append(neighbor)
        on_path.add(neighbor)
        stack.append(iter(dual.edge_rotation[neighbor]))

    return tally


def _tally(
    dual: DualGraph,
    source: int,
    n: int,
    blocked: AbstractSet[int],
    method: PathMethod,
    guard: _StepGuard,
    target: Optional[int] = None,
) -> Counter:
    """ Dispatch to one of the counters """
    if n < 1:
        raise MalformedInputError(f"Path length must be at least 1, not {n}!")
    if method is PathMethod.darts:
        return _tally_by_darts(dual, source, n, blocked, guard)

    return _tally_by_edges(dual, source, n, blocked, guard, target=target)


def count_simple_paths(
    dual: DualGraph,
    a: int,
    b: int,
    n: int,
    method: PathMethod = PathMethod.edges,
    avoid_outer: bool = False,
    guard: Optional[int] = None,
) -> int:
    """ p(a*, b*; n), the number of simple paths of length n from a to b """
    if a == b:
        raise MalformedInputError("Path endpoints must be distinct!")
    for face in (a, b):
        if not 0 <= face < dual.num_vertices:
            raise MalformedInputError(f"Face {face} is not a dual vertex!")

    blocked = {dual.outer} - {a, b} if avoid_outer else set()
    steps = _StepGuard(Settings.path_guard if guard is None else guard)
    return _tally(dual, a, n, blocked, PathMethod(method), steps, target=b)[b]


def _source_counts(
    args: Tuple[DualGraph, int, int, Tuple[int, ...], PathMethod, int]
) -> Dict[int, int]:
    """ Worker entry point: path counts from one source to every endpoint """
    dual, source, n, blocked, method, guard = args
    return dict(_tally(dual, source, n, frozenset(blocked), method, _StepGuard(guard)))


def max_path_count(
    dual: DualGraph,
    n: int,
    window: Optional[Iterable[int]] = None,
    method: PathMethod = PathMethod.edges,
    pool: Optional[WorkerPool] = None,
    guard: Optional[int] = None,
) -> PathCountRow:
    """
    p(n): the maximum count over ordered pairs of distinct window faces. Paths
    stay off the unbounded face unless it belongs to the window.
    """
    faces = sorted(set(dual.interior if window is None else window))
    if not faces:
        raise MalformedInputError("The path-count window is empty!")
    for face in faces:
        if not 0 <= face < dual.num_vertices:
            raise MalformedInputError(f"Face {face} is not a dual vertex!")

    if n == 0:
        return PathCountRow(n=0, value=1)

    blocked: Tuple[int, ...] = () if dual.outer in faces else (dual.outer,)
    guard = Settings.path_guard if guard is None else guard
    tasks = [(dual, face, n, blocked, PathMethod(method), guard) for face in faces]
    results = (pool or WorkerPool(1)).map(_source_counts, tasks)

    members = set(faces)
    value, pair = 0, None
    for source, counts in zip(faces, results):
        for target in sorted(counts):
            if target in members and target != source and counts[target] > value:
                value, pair = counts[target], (source, target)

    logging.info("p(%d) = %d over %d window faces", n, value, len(faces))
    return PathCountRow(n=n, value=value, pair=pair)


def path_table(
    dual: DualGraph,
    n_list: Sequence[int],
    window: Optional[Iterable[int]] = None,
    method: PathMethod = PathMethod.edges,
    pool: Optional[WorkerPool] = None,
    guard: Optional[int] = None,
) -> PathCountTable:
    """
    p(n) for every requested n together with p(2n) and p(n − 1), the values the
    recursion check and the counting bound consume.
    """
    if not n_list or any(n < 1 for n in n_list):
        raise MalformedInputError("Path lengths must be positive integers!")

    faces = sorted(set(dual.interior if window is None else window))
    lengths = sorted({m for n in n_list for m in (n - 1, n, 2 * n) if m >= 1})
    rows = [
        max_path_count(dual, m, window=faces, method=method, pool=pool, guard=guard)
        for m in lengths
    ]
    return PathCountTable(window=faces, method=PathMethod(method), rows=rows)


def _check_constants(constants: ConstantsProfile):
    """ Refuse constants outside the hypotheses """
    if constants.k <= 0 or constants.epsilon <= 0:
        raise HypothesisError(
            "Isoperimetric constants must be positive!",
            k=constants.k,
            epsilon=constants.epsilon,
        )
    if constants.K <= 0 or constants.D < 1:
        raise HypothesisError(
            "Growth constants must satisfy K > 0 and D >= 1!",
            K=constants.K,
            D=constants.D,
        )


def recursion_radius(constants: ConstantsProfile, n: int) -> int:
    """ The radius (8n/k)^{1/ε} the constants must be certified on for length n """
    return math.ceil((8 * n / constants.k) ** (1 / constants.epsilon) - 1e-9)


def check_recursion(
    dual: Optional[DualGraph],
    constants: ConstantsProfile,
    n_list: Sequence[int],
    table: Optional[PathCountTable] = None,
    method: PathMethod = PathMethod.edges,
    pool: Optional[WorkerPool] = None,
) -> RecursionBoundReport:
    """
    Compare p(2n) with 8n·K²·(8n/k)^{D/ε}·p(n)² for every n. A failure means the
    window the constants were certified on is too small, never that the bound is
    wrong.
    """
    _check_constants(constants)
    for n in n_list:
        required = recursion_radius(constants, n)
        if constants.window.r_max < required:
            logging.warning("Constants certified up to r=%d only", constants.window.r_max)
            raise WindowError(
                f"Recursion at n={n} needs constants certified up to radius {required}!",
                required_radius=required,
                available_radius=constants.window.r_max,
            )

    if table is None:
        if dual is None:
            raise MalformedInputError("Need either a dual graph or a path table!")
        table = path_table(dual, n_list, method=method, pool=pool)

    K, D, k, epsilon = constants.K, constants.D, constants.k, constants.epsilon
    rows: List[RecursionRow] = []
    for n in sorted(set(n_list)):
        lhs, base = table.count(2 * n), table.count(n)
        if lhs is None or base is None:
            raise MalformedInputError(f"The path table lacks p({n}) or p({2 * n})!")

        rhs = 8 * n * K ** 2 * (8 * n / k) ** (D / epsilon) * base ** 2
        rows.append(
            RecursionRow(
                n=n,
                lhs=lhs,
                rhs=rhs,
                slack=rhs / lhs if lhs else None,
                holds=lhs <= rhs,
            )
        )

    insufficient = not all(row.holds for row in rows)
    if insufficient:
        logging.warning("Recursion violated: the constants' window is insufficient")

    return RecursionBoundReport(
        rows=rows,
        p1_bound=(2 / k) ** (1 / epsilon),
        p1_exact=table.count(1),
        window_insufficient=insufficient,
    )


def bound_constant(
    constants: ConstantsProfile,
    horizon: int,
    base: Optional[float] = None,
    tail: bool = True,
) -> float:
    """
    C with p(2^m) ≤ exp(C·2^m), from q(m + 1) = 2q(m) + log(8·2^m·K²·(8·2^m/k)^{D/ε})
    starting at q(0) = (1/ε)·log(2/k), or log(base) for an exact p(1).

    q(m)/2^m = q(0) + Σ_{j<m} a_j/2^{j+1} with a_j = α + βj, which is eventually
    increasing, so the supremum over all m is the prefix maximum up to the point
    where the terms turn positive plus the closed form of the remaining series.
    """
    _check_constants(constants)
    if horizon < 0:
        raise MalformedInputError(f"Horizon must be nonnegative, not {horizon}!")

    if base is None:
        q0 = math.log(2 / constants.k) / constants.epsilon
    elif base > 0:
        q0 = math.log(base)
    else:
        raise MalformedInputError(f"Base value p(1) must be positive, not {base}!")

    ratio = constants.D / constants.epsilon
    log2 = math.log(2)
    alpha = 3 * log2 + 2 * math.log(constants.K) + ratio * (3 * log2 - math.log(constants.k))
    beta = log2 * (1 + ratio)

    last = horizon
    if tail and alpha < 0:
        last = max(horizon, math.ceil(-alpha / beta))

    partial, best = 0.0, 0.0
    for j in range(last):
        partial += (alpha + beta * j) / 2 ** (j + 1)
        best = max(best, partial)

    if tail:
        best = max(best, partial + (alpha + beta * (last + 1)) / 2 ** last)

    return q0 + best
