"""Test the error hierarchy"""
import asyncio
import pickle

import pytest

from peierls import pipeline
from peierls.graph.executor import WorkerPool
from peierls.graph.lattices import make_grid_ball
from peierls.models.requests import ProfileRequest
from peierls.utils.errors import (
    DualityError,
    GuardExceededError,
    HypothesisError,
    InconsistencyError,
    MalformedInputError,
    PeierlsError,
    WindowError,
)


@pytest.mark.parametrize(
    "error",
    [
        PeierlsError("failed"),
        MalformedInputError("bad input", field="radius"),
        WindowError("too small", 4, 2),
        WindowError("unbounded", 4, float("inf")),
        GuardExceededError("guard", explored=3),
        HypothesisError("epsilon is zero"),
        InconsistencyError("above the bound", margin=-0.1),
        DualityError("not a cycle"),
    ],
)
def test_errors_survive_pickling(error):
    restored = pickle.loads(pickle.dumps(error))
    assert type(restored) is type(error)
    assert restored.report() == error.report()
    assert str(restored) == str(error)


def test_window_errors_carry_radii():
    error = pickle.loads(pickle.dumps(WindowError("unbounded", 4, float("inf"))))
    assert error.required_radius == 4
    assert error.available_radius == float("inf")
    assert error.details == {"required_radius": 4, "available_radius": None}


def test_window_errors_cross_process_boundaries():
    request = ProfileRequest(graph=make_grid_ball(2).to_model(), r_max=5, s_max=2)
    with WorkerPool(2) as pool:
        with pytest.raises(WindowError) as error:
            asyncio.run(pool.run(pipeline.profile, request))

        assert error.value.details["required_radius"] == 5
        # The pool still serves work afterwards
        request = ProfileRequest(graph=make_grid_ball(3).to_model(), r_max=2, s_max=2)
        assert asyncio.run(pool.run(pipeline.profile, request)).D == 2
