"""
Measure the two hypotheses of the Peierls bound on a concrete window: the growth
constants (K, D) and the isoperimetric constants (k, ε). Both are exact at small
scale, the minimal boundaries coming from exhaustive enumeration of connected
vertex sets.
"""
import logging
import math
from typing import AbstractSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from peierls.graph.embedding import PlanarEmbedding, distances, rim_distance
from peierls.models.graph import Region
from peierls.models.profile import (
    BoundaryRow,
    ConstantsProfile,
    GrowthRow,
    ProfileFlag,
    Window,
)
from peierls.utils.errors import GuardExceededError, MalformedInputError, WindowError
from peierls.utils.settings import Settings

# Slack allowed above the fitted slope when snapping ε to (d − 1)/d
EPSILON_SLACK = 0.05


def connected_sets(
    emb: PlanarEmbedding,
    v: int,
    s_max: int,
    blocked: AbstractSet[int] = frozenset(),
    guard: Optional[int] = None,
) -> Iterator[Tuple[List[int], int]]:
    """
    Enumerate every connected vertex set S ∋ v with |S| ≤ s_max avoiding blocked
    exactly once, yielding (members, |∂S|). The members list is reused between
    yields, copy it to keep it.

    Sets are grown Redelmeier style: a vertex popped from the untried list is
    never offered again to the sets grown after it.
    """
    if v in blocked:
        return

    guard = Settings.cutset_guard if guard is None else guard
    members = [v]
    inside = {v}
    seen = set(blocked) | {v}
    explored = 0

    def grow(untried: List[int], boundary: int) -> Iterator[Tuple[List[int], int]]:
        nonlocal explored
        explored += 1
        if explored > guard:
            logging.warning("Connected set search exceeded its guard of %d", guard)
            raise GuardExceededError(
                f"Explored more than {guard} connected sets!",
                explored=explored - 1,
                size=len(members),
            )

        yield members, boundary
        if len(members) == s_max:
            return

        untried = list(untried)
        while untried:
            u = untried.pop()
            fresh = [w for w in emb.rotation[u] if w not in seen]
            seen.update(fresh)
            shared = sum(1 for w in emb.rotation[u] if w in inside)

            members.append(u)
            inside.add(u)
            yield from grow(untried + fresh, boundary + emb.degree(u) - 2 * shared)
            members.pop()
            inside.discard(u)
            seen.difference_update(fresh)

    start = [w for w in emb.rotation[v] if w not in seen]
    seen.update(start)
    yield from grow(start, emb.degree(v))


def growth_profile(emb: PlanarEmbedding, v: int, r_max: int) -> List[GrowthRow]:
    """ Exact ball sizes |B(v, r)| for 1 ≤ r ≤ r_max """
    if r_max < 1:
        raise MalformedInputError(f"r_max must be at least 1, not {r_max}!")

    available = rim_distance(emb, v)
    if r_max > available:
        logging.warning("Growth window r=%d exceeds rim distance %s", r_max, available)
        raise WindowError(
            f"Balls of radius {r_max} reach the truncation rim!",
            required_radius=r_max,
            available_radius=available,
        )

    counts = np.bincount(list(distances(emb, v, cutoff=r_max).values()))
    cumulative = np.cumsum(counts)
    return [
        GrowthRow(radius=r, count=int(cumulative[min(r, len(cumulative) - 1)]))
        for r in range(1, r_max + 1)
    ]


def fit_growth(table: Sequence[GrowthRow]) -> Tuple[float, int]:
    """
    The tightest (K, D) on the window: D is the least-squares slope of log |B|
    against log r rounded up, K the smallest constant covering every point.
    """
    rows = [row for row in table if row.radius >= 1]
    if not rows:
        raise MalformedInputError("Cannot fit growth constants to an empty table!")

    radii = np.array([row.radius for row in rows], dtype=float)
    counts = np.array([row.count for row in rows], dtype=float)
    if len(rows) > 1:
        slope = np.polyfit(np.log(radii), np.log(counts), 1)[0]
        D = max(1, math.ceil(slope - 1e-9))
    else:
        D = 1

    K = float(np.max(counts / radii ** D))
    return K, D


def min_boundary_table(
    emb: PlanarEmbedding, v: int, s_max: int, guard: Optional[int] = None
) -> List[BoundaryRow]:
    """
    One exhaustive pass over the connected sets S ∋ v with |S| ≤ s_max, keeping
    for every size the lexicographically smallest set of minimal boundary.
    """
    guard = Settings.boundary_guard if guard is None else guard
    if s_max < 1:
        raise MalformedInputError(f"Region size must be at least 1, not {s_max}!")
    if s_max > guard:
        raise GuardExceededError(
            f"Region size {s_max} exceeds the exhaustive search guard {guard}!",
            size=s_max,
            guard=guard,
        )

    available = rim_distance(emb, v)
    if s_max > available:
        logging.warning("Regions of size %d may touch the rim at %s", s_max, available)
        raise WindowError(
            f"Regions of size {s_max} may reach the truncation rim!",
            required_radius=s_max,
            available_radius=available,
        )

    best: dict = {}
    for members, boundary in connected_sets(emb, v, s_max, blocked=emb.rim):
        size = len(members)
        current = best.get(size)
        if current is None or boundary <= current[0]:
            candidate = (boundary, tuple(sorted(members)))
            if current is None or candidate < current:
                best[size] = candidate

    logging.info("Measured min |∂S| for sizes 1..%d around vertex %d", s_max, v)
    if len(best) < s_max:
        raise WindowError(
            f"The window holds no connected set of size {len(best) + 1}!",
            required_radius=s_max,
            available_radius=available,
        )

    return [
        BoundaryRow(size=size, boundary=boundary, members=list(members))
        for size, (boundary, members) in sorted(best.items())
    ]


def min_boundary(
    emb: PlanarEmbedding, v: int, size: int, guard: Optional[int] = None
) -> Region:
    """ A connected region of the given size containing v with minimal |∂S| """
    row = min_boundary_table(emb, v, size, guard=guard)[-1]
    return emb.region(row.members)


def snap_epsilon(slope: float) -> float:
    """ The largest (d − 1)/d, d ≥ 1 an integer, not exceeding slope + slack """
    ceiling = slope + EPSILON_SLACK
    if ceiling >= 1:
        return 1.0
    if ceiling < 0:
        return 0.0

    d = max(1, math.floor(1 / (1 - ceiling) + 1e-12))
    return (d - 1) / d


def fit_isoperimetry(
    table: Sequence[BoundaryRow], epsilon: Optional[float] = None
) -> Tuple[float, float, Optional[float], List[ProfileFlag]]:
    """
    Fit |∂S| ≥ k·|S|^ε to a min-boundary table. Returns (k, ε, slope, flags); the
    exponent may be forced, otherwise it is snapped from the log-log slope.
    """
    if not table:
        raise MalformedInputError("Cannot fit isoperimetric constants to an empty table!")

    flags: List[ProfileFlag] = []
    sizes = np.array([row.size for row in table], dtype=float)
    boundaries = np.array([row.boundary for row in table], dtype=float)

    slope: Optional[float] = None
    if len(table) > 1:
        slope = float(np.polyfit(np.log(sizes), np.log(boundaries), 1)[0])
    else:
        flags.append(ProfileFlag.insufficient_window)

    if epsilon is None:
        epsilon = 1.0 if slope is None else snap_epsilon(slope)
    elif not 0 <= epsilon <= 1:
        raise MalformedInputError(f"Exponent {epsilon} lies outside [0, 1]!")

    if epsilon <= 0:
        logging.warning("Boundaries do not grow with size: isoperimetry fails")
        flags.append(ProfileFlag.hypotheses_fail)

    k = float(np.min(boundaries / sizes ** epsilon))
    return k, epsilon, slope, flags


def profile(
    emb: PlanarEmbedding,
    v: int,
    r_max: int,
    s_max: int,
    epsilon: Optional[float] = None,
    guard: Optional[int] = None,
) -> ConstantsProfile:
    """ Measure and fit both hypotheses around v """
    growth = growth_profile(emb, v, r_max)
    K, D = fit_growth(growth)

    isoperimetry = min_boundary_table(emb, v, s_max, guard=guard)
    k, epsilon, slope, flags = fit_isoperimetry(isoperimetry, epsilon=epsilon)

    logging.info(
        "Fitted K=%g D=%d k=%g epsilon=%g on r<=%d, s<=%d", K, D, k, epsilon, r_max, s_max
    )
    return ConstantsProfile(
        vertex=v,
        K=K,
        D=D,
        k=k,
        epsilon=epsilon,
        dimension=1 / (1 - epsilon) if epsilon < 1 else None,
        slope=slope,
        window=Window(r_max=r_max, s_max=s_max),
        growth=growth,
        isoperimetry=isoperimetry,
        flags=flags,
    )
