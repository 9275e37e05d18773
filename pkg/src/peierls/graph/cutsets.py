"""
Minimal cut-sets of a vertex, counted two independent ways, and the Peierls
counting bound built on them.

A minimal cut-set of v is the edge boundary of a finite connected region S ∋ v
whose complement is connected; in a finite window "finite" means S avoids the
vertices of the unbounded face. Through the star map these are exactly the
simple dual cycles that avoid the unbounded face and wind around v an odd number
of times along any path from v to infinity.
"""
import logging
import math
from collections import Counter
from typing import AbstractSet, List, Optional, Sequence, Set, Tuple

import networkx as nx
from scipy import optimize

from peierls.graph.dual import DualGraph
from peierls.graph.embedding import PlanarEmbedding, boundary_distance
from peierls.graph.profiles import connected_sets
from peierls.models.cutsets import (
    BoundRow,
    CensusMethod,
    CensusRow,
    CutsetCensus,
    PeierlsBound,
)
from peierls.models.paths import PathCountTable
from peierls.models.profile import ConstantsProfile
from peierls.utils.errors import (
    GuardExceededError,
    HypothesisError,
    MalformedInputError,
    WindowError,
)
from peierls.utils.settings import Settings


def _region_limit(
    emb: PlanarEmbedding,
    v: int,
    n_max: int,
    constants: Optional[ConstantsProfile],
    require_margin: bool,
) -> Tuple[Optional[int], bool]:
    """
    Validate the request and return the largest finite side that can carry a cut
    of size n_max, i.e. (n_max/k)^{1/ε}, or None without constants. The flag says
    whether v lies far enough from the unbounded face for the census to be
    complete, which needs constants.
    """
    if not 0 <= v < emb.num_vertices:
        raise MalformedInputError(f"Vertex {v} is not in the embedding!")
    if n_max < 1:
        raise MalformedInputError(f"n_max must be at least 1, not {n_max}!")
    if v in emb.boundary_vertices:
        raise WindowError(
            f"Vertex {v} lies on the unbounded face and has no finite side!",
            required_radius=1,
            available_radius=0,
        )

    if constants is None:
        return None, False
    if not constants.hypotheses_hold:
        raise HypothesisError(
            "Cannot bound region sizes without isoperimetric constants!",
            k=constants.k,
            epsilon=constants.epsilon,
        )

    reach = (n_max / constants.k) ** (1 / constants.epsilon)
    required = math.ceil(reach - 1e-9)
    available = boundary_distance(emb, v)
    if require_margin and available < required:
        logging.warning("Vertex %d is %s from infinity, need %d", v, available, required)
        raise WindowError(
            f"Cut-sets of size {n_max} need vertex {v} at distance {required} "
            "from the unbounded face!",
            required_radius=required,
            available_radius=available,
        )

    return max(1, math.floor(reach + 1e-9)), available >= required


def _complement_connected(emb: PlanarEmbedding, inside: AbstractSet[int]) -> bool:
    """ Whether the vertices outside a region induce a connected subgraph """
    outside = emb.graph.subgraph(u for u in emb.graph if u not in inside)
    return not len(outside) or nx.is_connected(outside)


def _census(
    v: int,
    n_max: int,
    method: CensusMethod,
    cuts: Set[Tuple[int, ...]],
    region_limit: Optional[int],
    certified: bool,
    explored: int,
) -> CutsetCensus:
    """ Package a deduplicated set of cuts """
    sizes = Counter(len(cut) for cut in cuts)
    return CutsetCensus(
        vertex=v,
        n_max=n_max,
        method=method,
        counts=[CensusRow(n=n, count=sizes[n]) for n in range(1, n_max + 1)],
        cutsets=[list(cut) for cut in sorted(cuts)],
        region_limit=region_limit,
        certified=certified,
        explored=explored,
    )


def enumerate_cutsets_direct(
    emb: PlanarEmbedding,
    v: int,
    n_max: int,
    constants: Optional[ConstantsProfile] = None,
    require_margin: bool = True,
    guard: Optional[int] = None,
) -> CutsetCensus:
    """
    Enumerate connected regions S ∋ v avoiding the unbounded face, keeping ∂S
    whenever |∂S| ≤ n_max and the complement of S is connected.
    """
    limit, certified = _region_limit(emb, v, n_max, constants, require_margin)
    blocked = emb.boundary_vertices

    cuts: Set[Tuple[int, ...]] = set()
    explored = 0
    sets = connected_sets(
        emb, v, limit or emb.num_vertices, blocked=blocked, guard=guard
    )
    for members, boundary in sets:
        explored += 1
        if boundary <= n_max and _complement_connected(emb, set(members)):
            cuts.add(tuple(emb.boundary(members)))

    logging.info("Direct census: %d cut-sets from %d regions", len(cuts), explored)
    return _census(v, n_max, CensusMethod.direct, cuts, limit, certified, explored)


def _escape_path(emb: PlanarEmbedding, v: int) -> List[int]:
    """ Edge ids of a shortest path from v to the nearest unbounded-face vertex """
    paths = nx.single_source_shortest_path(emb.graph, v)
    target = min(
        (u for u in emb.boundary_vertices if u in paths),
        key=lambda u: (len(paths[u]), u),
    )
    walk = paths[target]
    return [emb.edge_id(a, b) for a, b in zip(walk, walk[1:])]


def enumerate_cutsets_via_dual(
    emb: PlanarEmbedding,
    dual: DualGraph,
    v: int,
    n_max: int,
    constants: Optional[ConstantsProfile] = None,
    require_margin: bool = True,
    guard: Optional[int] = None,
) -> CutsetCensus:
    """
    Every cut-set of v meets a fixed escape path P from v to infinity. For each
    edge e of P, grow e* into a cycle by an open simple dual path of length at
    most n_max − 1 that stays off the unbounded face; the cycle encloses v exactly
    when it crosses P an odd number of times.
    """
    limit, certified = _region_limit(emb, v, n_max, constants, require_margin)
    guard = Settings.cutset_guard if guard is None else guard
    if dual.num_edges != emb.num_edges:
        raise MalformedInputError("The dual does not belong to this embedding!")

    escape = [dual.star[edge] for edge in _escape_path(emb, v)]
    crossings = set(escape)

    graph = nx.Graph()
    graph.add_nodes_from(f for f in range(dual.num_vertices) if f != dual.outer)
    graph.add_edges_from(
        (a, b) for a, b in dual.edges if a != b and dual.outer not in (a, b)
    )

    cuts: Set[Tuple[int, ...]] = set()
    explored = 0

    def record(cycle: Sequence[int]):
        if sum(1 for edge in cycle if edge in crossings) % 2:
            cuts.add(tuple(sorted(dual.star_inverse[edge] for edge in cycle)))

    for closing in escape:
        start, end = dual.edges[closing]
        if dual.outer in (start, end):
            continue
        if start == end:
            record([closing])
            continue

        reach = nx.single_source_shortest_path_length(graph, end, cutoff=n_max - 1)
        path_edges: List[int] = []
        visited = {start}

        def extend(face: int):
            nonlocal explored
            explored += 1
            if explored > guard:
                raise GuardExceededError(
                    f"Dual cycle search exceeded {guard} steps!",
                    explored=guard,
                    partial=len(cuts),
                )

            if face == end:
                record(path_edges + [closing])
                return

            budget = n_max - 1 - len(path_edges)
            for edge, neighbor in dual.adjacency[face]:
                if edge == closing or neighbor in visited or neighbor == dual.outer:
                    continue
                if reach.get(neighbor, n_max) > budget - 1:
                    continue

                visited.add(neighbor)
                path_edges.append(edge)
                extend(neighbor)
                path_edges.pop()
                visited.discard(neighbor)

        extend(start)

    logging.info("Dual census: %d cut-sets from %d path steps", len(cuts), explored)
    return _census(v, n_max, CensusMethod.via_dual, cuts, limit, certified, explored)


def peierls_count_bound(
    constants: ConstantsProfile,
    n: int,
    table: Optional[PathCountTable] = None,
    C: Optional[float] = None,
) -> float:
    """
    K²(2n/k)^{D/ε}·p(n − 1): the edges near v that a cut of size n can use, times
    the ways to close one of them into a dual cycle. p(0) is the empty path.
    """
    if not constants.hypotheses_hold:
        raise HypothesisError("The constants do not satisfy the hypotheses!")
    if n < 1:
        raise MalformedInputError(f"Cut-set size must be at least 1, not {n}!")

    paths = table.count(n - 1) if table is not None else (1 if n == 1 else None)
    if paths is None:
        if C is None:
            raise MalformedInputError(f"Neither p({n - 1}) nor a constant C is known!")
        paths = math.exp(C * (n - 1))

    K, D, k, epsilon = constants.K, constants.D, constants.k, constants.epsilon
    return K ** 2 * (2 * n / k) ** (D / epsilon) * paths


def peierls_threshold(
    A: float, growth: float, n0: int, head: Optional[Sequence[float]] = None
) -> float:
    """
    The smallest p with Σ_{n ≥ n0} N(n)·(1 − p)^n ≤ 1 where N(n) = head[n − n0]
    while the head lasts and A·growth^n afterwards. With x = 1 − p the tail is
    the geometric series A·(growth·x)^m / (1 − growth·x), so x is found by
    bisection on (0, min(1, 1/growth)).
    """
    if growth <= 0:
        raise MalformedInputError(f"The growth rate must be positive, not {growth}!")
    if A <= 0:
        raise MalformedInputError(f"The prefactor must be positive, not {A}!")
    if n0 < 1:
        raise MalformedInputError(f"The smallest cut-set size must be positive, not {n0}!")

    head = list(head or [])
    first_tail = n0 + len(head)

    def excess(x: float) -> float:
        exact = sum(count * x ** (n0 + i) for i, count in enumerate(head))
        ratio = growth * x
        return exact + A * ratio ** first_tail / (1 - ratio) - 1

    upper = min(1.0, 1 / growth) * (1 - 1e-12)
    if excess(upper) <= 0:
        return 1 - upper

    x = optimize.bisect(excess, 0.0, upper, xtol=1e-15, maxiter=500)
    return 1 - x


def threshold_from_constants(
    constants: ConstantsProfile,
    C: float,
    n0: int,
    census: Optional[CutsetCensus] = None,
    table: Optional[PathCountTable] = None,
) -> PeierlsBound:
    """
    Turn N(n) ≤ K²(2n/k)^a·exp(C(n − 1)), a = D/ε, into the form A·growth^n using
    n^a ≤ (a/(e·ln 2))^a·2^n, then solve for the threshold. Exact census counts
    replace the bound for the sizes they cover.
    """
    if not constants.hypotheses_hold:
        raise HypothesisError("The constants do not satisfy the hypotheses!")

    K, k, a = constants.K, constants.k, constants.D / constants.epsilon
    A = K ** 2 * (2 / k) ** a * (a / (math.e * math.log(2))) ** a * math.exp(-C)
    growth = 2 * math.exp(C)

    head: List[int] = []
    last = 2 * n0
    if census is not None:
        if not census.certified:
            raise HypothesisError(
                "The census may miss cut-sets reaching the truncation rim!",
                vertex=census.vertex,
            )
        if census.vertex != constants.vertex:
            raise HypothesisError(
                f"The census of vertex {census.vertex} cannot refine constants "
                f"fitted at vertex {constants.vertex}!",
                vertex=census.vertex,
            )
        head = [census.count(n) for n in range(n0, census.n_max + 1)]
        last = census.n_max

    rows = [
        BoundRow(
            n=n,
            bound=peierls_count_bound(constants, n, table=table, C=C),
            census=census.count(n) if census is not None else None,
        )
        for n in range(1, last + 1)
    ]

    p_star = peierls_threshold(A, growth, n0, head=head)
    logging.info("Peierls threshold p* = %.12g (growth %.6g, n0 = %d)", p_star, growth, n0)
    return PeierlsBound(A=A, growth=growth, n0=n0, head=head, p_star=p_star, rows=rows)
