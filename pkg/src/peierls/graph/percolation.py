"""
Monte Carlo Bernoulli bond percolation in a finite window.

The randomness is keyed: trial t of seed s draws the uniforms of every edge from a
Philox generator keyed by (s, t), so configurations at different p are coupled
through the same uniforms and any trial can be replayed on its own. A trial is
summarized by its crossing threshold, the smallest p at which the center reaches
the target, which serves the whole p-grid from a single union-find pass.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.stats import norm

from peierls.graph.embedding import PlanarEmbedding, distances, rim_distance
from peierls.graph.executor import WorkerPool
from peierls.models.percolation import (
    ConfrontReport,
    PcEstimate,
    PercolationConfig,
    SweepResult,
    SweepRow,
)
from peierls.utils.errors import (
    HypothesisError,
    InconsistencyError,
    MalformedInputError,
    WindowError,
)
from peierls.utils.settings import Settings

SEED_MASK = (1 << 64) - 1

# Union-find node standing for the whole target set
SINK = -1


class CrossingWindow:
    """
    The finite-volume proxy of "v lies in an infinite cluster": the ball of the
    given radius around the center with its outermost sphere as the target, or
    the whole window with the unbounded face as the target.
    """

    def __init__(
        self,
        emb: PlanarEmbedding,
        center: Optional[int] = None,
        radius: Optional[int] = None,
    ):
        center = emb.center if center is None else center
        if not 0 <= center < emb.num_vertices:
            raise MalformedInputError(f"Vertex {center} is not in the embedding!")

        if radius is None:
            members = set(range(emb.num_vertices))
            target = frozenset(emb.boundary_vertices)
        else:
            if radius < 1:
                raise MalformedInputError(f"Window radius must be positive, not {radius}!")
            available = rim_distance(emb, center)
            if radius > available:
                raise WindowError(
                    f"A crossing window of radius {radius} reaches the truncation rim!",
                    required_radius=radius,
                    available_radius=available,
                )

            lengths = distances(emb, center, cutoff=radius)
            members = set(lengths)
            target = frozenset(u for u, d in lengths.items() if d == radius)

        if center in target or not target:
            raise MalformedInputError(f"Vertex {center} has no separate target set!")

        self.center = center
        self.radius = radius
        self.target = target
        self.edges = np.array(
            [(u, w) for u, w in emb.edges if u in members and w in members],
            dtype=np.int64,
        ).reshape(-1, 2)

    @property
    def num_edges(self) -> int:
        """ Number of bonds inside the window """
        return len(self.edges)

    def union_find(self) -> nx.utils.UnionFind:
        """ A fresh structure with the target already merged into the sink """
        components = nx.utils.UnionFind()
        components.union(SINK, *self.target)
        return components


def uniforms(seed: int, trial: int, count: int) -> np.ndarray:
    """ U_0, ..., U_{count−1} of a trial, keyed by (seed, trial) """
    key = ((seed & SEED_MASK) << 64) | (trial & SEED_MASK)
    return np.random.Generator(np.random.Philox(key=key)).random(count)


def sample_and_query(window: CrossingWindow, config: PercolationConfig) -> bool:
    """ Whether the center is joined to the target by open bonds """
    values = uniforms(config.seed, config.trial, window.num_edges)
    components = window.union_find()
    for u, w in window.edges[values < config.p]:
        components.union(int(u), int(w))

    return components[window.center] == components[SINK]


def crossing_threshold(window: CrossingWindow, seed: int, trial: int) -> float:
    """
    Open the bonds in increasing order of their uniforms until the center joins
    the target; the trial succeeds at p exactly when the returned value is < p.
    """
    values = uniforms(seed, trial, window.num_edges)
    components = window.union_find()
    for index in np.argsort(values, kind="stable"):
        u, w = window.edges[index]
        components.union(int(u), int(w))
        if components[window.center] == components[SINK]:
            return float(values[index])

    # Only reachable when the window is disconnected
    return 1.0


def _chunk_thresholds(args: Tuple[CrossingWindow, int, range]) -> List[float]:
    """ Worker entry point: thresholds of a contiguous block of trials """
    window, seed, trials = args
    return [crossing_threshold(window, seed, trial) for trial in trials]


def wilson_interval(successes: int, trials: int, confidence: float) -> Tuple[float, float]:
    """ The Wilson score interval of a binomial proportion """
    z = float(norm.ppf(0.5 + confidence / 2))
    theta = successes / trials
    scale = 1 + z ** 2 / trials
    middle = (theta + z ** 2 / (2 * trials)) / scale
    half = z * np.sqrt(theta * (1 - theta) / trials + z ** 2 / (4 * trials ** 2)) / scale
    return max(0.0, middle - half), min(1.0, middle + half)


def sweep_rows(
    thresholds: Sequence[float], p_grid: Sequence[float], confidence: float
) -> List[SweepRow]:
    """ θ̂ with Wilson intervals at every grid point """
    values = np.sort(np.asarray(thresholds, dtype=float))
    trials = len(values)
    rows = []
    for p in p_grid:
        successes = int(np.searchsorted(values, p, side="left"))
        low, high = wilson_interval(successes, trials, confidence)
        rows.append(
            SweepRow(
                p=float(p),
                theta=successes / trials,
                successes=successes,
                trials=trials,
                ci_low=low,
                ci_high=high,
                half_width=(high - low) / 2,
            )
        )

    return rows


def sweep(
    window: CrossingWindow,
    p_grid: Sequence[float],
    trials: int,
    seed: int,
    pool: Optional[WorkerPool] = None,
    confidence: Optional[float] = None,
) -> SweepResult:
    """ Estimate θ(p) on every grid point from the same coupled trials """
    confidence = Settings.confidence if confidence is None else confidence
    if trials < 1:
        raise MalformedInputError(f"Need at least one trial, not {trials}!")
    if not len(p_grid):
        raise MalformedInputError("The p-grid is empty!")
    if any(not 0 <= p <= 1 for p in p_grid) or list(p_grid) != sorted(p_grid):
        raise MalformedInputError("The p-grid must be sorted within [0, 1]!")

    pool = pool or WorkerPool(1)
    tasks = [(window, seed, chunk) for chunk in pool.chunks(trials)]
    thresholds = [value for chunk in pool.map(_chunk_thresholds, tasks) for value in chunk]

    rows = sweep_rows(thresholds, p_grid, confidence)
    nonmonotone = False
    for before, after in zip(rows, rows[1:]):
        spread = np.sqrt(
            before.theta * (1 - before.theta) / trials
            + after.theta * (1 - after.theta) / trials
        )
        if before.theta - after.theta > 3 * spread:
            logging.warning("θ̂ drops from p=%g to p=%g", before.p, after.p)
            nonmonotone = True

    logging.info("Swept %d grid points with %d trials", len(rows), trials)
    return SweepResult(
        center=window.center,
        radius=window.radius,
        seed=seed,
        trials=trials,
        rows=rows,
        thresholds=thresholds,
        nonmonotone=nonmonotone,
    )


def _crossing(
    grid: np.ndarray, theta: np.ndarray
) -> Tuple[Optional[float], float, float]:
    """ The interpolated 1/2 crossing and its bracketing grid interval """
    above = np.nonzero(theta >= 0.5)[0]
    if not len(above):
        return None, float(grid[-1]), 1.0

    i = int(above[0])
    if i == 0:
        return None, 0.0, float(grid[0])

    lo, hi = grid[i - 1], grid[i]
    fraction = (0.5 - theta[i - 1]) / (theta[i] - theta[i - 1])
    return float(lo + fraction * (hi - lo)), float(lo), float(hi)


def estimate_pc(
    result: SweepResult,
    confidence: Optional[float] = None,
    samples: Optional[int] = None,
) -> PcEstimate:
    """
    Locate the crossing θ̂ = 1/2 and bootstrap the trials for a confidence
    interval. Crossings outside the grid give an open-ended interval.
    """
    confidence = Settings.confidence if confidence is None else confidence
    samples = Settings.bootstrap_samples if samples is None else samples
    if not result.rows:
        raise MalformedInputError("The sweep has no grid points!")

    grid = np.array([row.p for row in result.rows])
    theta = np.array([row.theta for row in result.rows])
    estimate, low, high = _crossing(grid, theta)

    ci_low = ci_high = None
    thresholds = np.asarray(result.thresholds, dtype=float)
    if estimate is not None and len(thresholds) and samples > 0:
        generator = np.random.Generator(
            np.random.Philox(key=(result.seed & SEED_MASK) << 64 | SEED_MASK)
        )
        crossings = []
        for _ in range(samples):
            resampled = np.sort(generator.choice(thresholds, size=len(thresholds)))
            counts = np.searchsorted(resampled, grid, side="left") / len(thresholds)
            crossing, _, _ = _crossing(grid, counts)
            if crossing is not None:
                crossings.append(crossing)

        if crossings:
            ci_low, ci_high = (
                float(q)
                for q in np.quantile(crossings, [(1 - confidence) / 2, (1 + confidence) / 2])
            )

    return PcEstimate(
        estimate=estimate,
        low=low,
        high=high,
        ci_low=ci_low,
        ci_high=ci_high,
        confidence=confidence,
        open_low=estimate is None and bool(theta[0] >= 0.5),
        open_high=estimate is None and bool(theta[0] < 0.5),
    )


def confront(estimate: PcEstimate, p_star: Optional[float]) -> ConfrontReport:
    """
    Compare the empirical crossing with the rigorous threshold. Since p_c ≤ p_star
    is proven, a crossing confidently above p_star means a bug.
    """
    if p_star is None:
        raise HypothesisError("No Peierls threshold exists: the hypotheses fail!")
    if not 0 <= p_star < 1:
        raise HypothesisError(f"p_star = {p_star} is not a threshold below one!")

    if estimate.open_high:
        # θ̂ < 1/2 on the whole grid, so the crossing lies above its last point
        lowest: Optional[float] = estimate.low
    elif estimate.ci_low is not None:
        lowest = estimate.ci_low
    else:
        lowest = estimate.estimate

    if lowest is not None and lowest > p_star:
        logging.error("Empirical crossing %g exceeds p_star %g", lowest, p_star)
        raise InconsistencyError(
            f"Empirical crossing {lowest} lies above the rigorous bound {p_star}!",
            estimate=estimate.estimate,
            ci_low=estimate.ci_low,
            p_star=p_star,
        )

    highest = estimate.ci_high if estimate.ci_high is not None else estimate.estimate
    return ConfrontReport(
        p_star=p_star,
        estimate=estimate.estimate,
        ci_low=estimate.ci_low,
        ci_high=estimate.ci_high,
        margin=None if highest is None else p_star - highest,
        consistent=True,
    )
