"""Test the keyed Monte Carlo sweep and the comparison with p_star"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from peierls.graph.executor import WorkerPool
from peierls.graph.lattices import make_grid_ball, make_path, make_triangular_ball
from peierls.graph.percolation import (
    CrossingWindow,
    confront,
    crossing_threshold,
    estimate_pc,
    sample_and_query,
    sweep,
    sweep_rows,
    uniforms,
    wilson_interval,
)
from peierls.models.parsing import parse_grid
from peierls.models.percolation import PcEstimate, PercolationConfig, SweepResult
from peierls.utils.errors import (
    HypothesisError,
    InconsistencyError,
    MalformedInputError,
    WindowError,
)


@pytest.fixture(scope="module")
def window():
    return CrossingWindow(make_grid_ball(5))


def test_uniforms_are_keyed_by_seed_and_trial():
    assert np.array_equal(uniforms(7, 3, 50), uniforms(7, 3, 50))
    assert not np.array_equal(uniforms(7, 3, 50), uniforms(7, 4, 50))
    assert not np.array_equal(uniforms(7, 3, 50), uniforms(8, 3, 50))
    # A longer draw extends a shorter one
    assert np.array_equal(uniforms(7, 3, 80)[:50], uniforms(7, 3, 50))


def test_crossing_window_targets(window):
    emb = make_grid_ball(5)
    assert window.target == emb.boundary_vertices
    assert window.num_edges == emb.num_edges

    inner = CrossingWindow(emb, radius=3)
    assert len(inner.target) == 12
    assert inner.num_edges < emb.num_edges

    with pytest.raises(WindowError):
        CrossingWindow(emb, radius=6)
    with pytest.raises(MalformedInputError):
        CrossingWindow(emb, center=emb.num_vertices)


@settings(deadline=None, max_examples=25)
@given(
    st.integers(min_value=0, max_value=2 ** 64 - 1),
    st.integers(min_value=0, max_value=1000),
    st.floats(min_value=0, max_value=1),
)
def test_threshold_decides_every_configuration(seed, trial, p):
    window = CrossingWindow(make_grid_ball(4))
    threshold = crossing_threshold(window, seed, trial)
    config = PercolationConfig(p=p, seed=seed, trial=trial)
    assert sample_and_query(window, config) == (threshold < p)


def test_configurations_are_monotone_in_p(window):
    for trial in range(20):
        outcomes = [
            sample_and_query(window, PercolationConfig(p=p, seed=11, trial=trial))
            for p in np.linspace(0, 1, 21)
        ]
        assert outcomes == sorted(outcomes)


def test_sweep_extremes(window):
    result = sweep(window, [0.0, 1.0], trials=30, seed=5)
    assert [row.theta for row in result.rows] == [0.0, 1.0]
    assert result.trials == 30
    assert len(result.thresholds) == 30
    assert not result.nonmonotone


def test_sweep_does_not_depend_on_chunking(window):
    grid = [0.3, 0.5, 0.7]
    single = sweep(window, grid, trials=40, seed=9, pool=WorkerPool(1))
    chunked = sweep(window, grid, trials=40, seed=9, pool=WorkerPool(3))
    assert single.thresholds == chunked.thresholds
    assert single.rows == chunked.rows


@pytest.mark.slow
def test_sweep_in_worker_processes(window):
    grid = [0.4, 0.5, 0.6]
    with WorkerPool(2) as pool:
        parallel = sweep(window, grid, trials=64, seed=3, pool=pool)

    assert parallel.thresholds == sweep(window, grid, trials=64, seed=3).thresholds


def test_sweep_rejects_bad_grids(window):
    with pytest.raises(MalformedInputError):
        sweep(window, [], trials=5, seed=0)
    with pytest.raises(MalformedInputError):
        sweep(window, [0.6, 0.4], trials=5, seed=0)
    with pytest.raises(MalformedInputError):
        sweep(window, [0.5], trials=0, seed=0)


def test_wilson_interval():
    low, high = wilson_interval(0, 10, 0.95)
    assert low == pytest.approx(0.0, abs=1e-12)
    assert 0 < high < 0.35

    low, high = wilson_interval(5, 10, 0.95)
    assert low < 0.5 < high
    assert 0.5 - low == pytest.approx(high - 0.5)


def sweep_of(thresholds, grid, seed=0):
    return SweepResult(
        center=0,
        seed=seed,
        trials=len(thresholds),
        rows=sweep_rows(thresholds, grid, 0.95),
        thresholds=thresholds,
    )


def test_crossing_is_interpolated_and_bootstrapped():
    thresholds = [0.45] * 2 + [0.55] * 6 + [0.65] * 2
    result = sweep_of(thresholds, [0.4, 0.5, 0.6, 0.7])
    assert [row.theta for row in result.rows] == [0.0, 0.2, 0.8, 1.0]

    estimate = estimate_pc(result, samples=200)
    assert estimate.estimate == pytest.approx(0.55)
    assert (estimate.low, estimate.high) == (0.5, 0.6)
    assert 0.4 <= estimate.ci_low <= estimate.estimate <= estimate.ci_high <= 0.7
    assert not estimate.open_low and not estimate.open_high

    assert estimate_pc(result, samples=200) == estimate


def test_crossings_outside_the_grid_are_open_ended():
    above = estimate_pc(sweep_of([0.9] * 10, [0.1, 0.2]), samples=50)
    assert above.estimate is None
    assert above.open_high and not above.open_low
    assert (above.low, above.high) == (0.2, 1.0)

    below = estimate_pc(sweep_of([0.05] * 10, [0.1, 0.2]), samples=50)
    assert below.estimate is None
    assert below.open_low and not below.open_high
    assert (below.low, below.high) == (0.0, 0.1)


def test_confront():
    estimate = PcEstimate(estimate=0.5, low=0.45, high=0.55, ci_low=0.48, ci_high=0.52)
    report = confront(estimate, 0.9)
    assert report.consistent
    assert report.margin == pytest.approx(0.38)

    with pytest.raises(InconsistencyError):
        confront(estimate, 0.4)
    with pytest.raises(HypothesisError):
        confront(estimate, None)
    with pytest.raises(HypothesisError):
        confront(estimate, 1.0)


def test_confront_crossings_above_the_grid():
    above = estimate_pc(sweep_of([0.9] * 10, [0.1, 0.2]), samples=50)
    with pytest.raises(InconsistencyError):
        confront(above, 0.15)

    report = confront(above, 0.95)
    assert report.consistent
    assert report.margin is None

    below = estimate_pc(sweep_of([0.05] * 10, [0.1, 0.2]), samples=50)
    assert confront(below, 0.15).consistent


@pytest.mark.slow
def test_square_lattice_crossing_lies_below_the_peierls_threshold():
    window = CrossingWindow(make_grid_ball(64))
    result = sweep(window, parse_grid("0.30-0.70:0.01"), trials=200, seed=2024)
    thetas = [row.theta for row in result.rows]
    assert thetas == sorted(thetas)

    estimate = estimate_pc(result, samples=200)
    assert estimate.ci_low <= 0.55 and estimate.ci_high >= 0.45
    assert confront(estimate, 0.99).consistent


@pytest.mark.slow
def test_triangular_lattice_crossing():
    window = CrossingWindow(make_triangular_ball(64))
    result = sweep(window, parse_grid("0.20-0.50:0.01"), trials=200, seed=2024)
    estimate = estimate_pc(result, samples=200)
    assert 0.30 <= estimate.estimate <= 0.40


@pytest.mark.slow
def test_ten_thousand_coupled_trials_are_monotone_in_p():
    window = CrossingWindow(make_grid_ball(4))
    grid = [0.2, 0.35, 0.5, 0.65, 0.8]
    for trial in range(10 ** 4):
        outcomes = [
            sample_and_query(window, PercolationConfig(p=p, seed=2024, trial=trial))
            for p in grid
        ]
        assert outcomes == sorted(outcomes)


def test_a_path_never_percolates_below_one():
    window = CrossingWindow(make_path(41), radius=20)
    result = sweep(window, [0.5, 0.9], trials=50, seed=1)
    assert result.rows[0].theta < 0.01
    assert result.rows[1].theta < 0.5
