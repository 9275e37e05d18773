"""
Shared fixtures: small windows of the standard lattices and the constants of Z²
"""
import pytest

from peierls.graph.dual import dualize
from peierls.graph.lattices import make_grid_ball, make_grid_box, make_path
from peierls.models.profile import ConstantsProfile, GrowthRow, Window


def make_constants(
    K: float = 5.0,
    D: int = 2,
    k: float = 4.0,
    epsilon: float = 0.5,
    r_max: int = 64,
    s_max: int = 9,
    degree: int = 4,
) -> ConstantsProfile:
    """ Constants built by hand, by default the ones measured on Z² """
    return ConstantsProfile(
        K=K,
        D=D,
        k=k,
        epsilon=epsilon,
        window=Window(r_max=r_max, s_max=s_max),
        growth=[GrowthRow(radius=1, count=degree + 1)],
    )


@pytest.fixture
def constants_factory():
    return make_constants


@pytest.fixture
def grid_constants() -> ConstantsProfile:
    return make_constants()


@pytest.fixture(scope="session")
def grid_ball():
    return make_grid_ball(6)


@pytest.fixture(scope="session")
def box3():
    return make_grid_box(3, 3)


@pytest.fixture(scope="session")
def box5():
    return make_grid_box(5, 5)


@pytest.fixture(scope="session")
def path_graph():
    return make_path(21)


@pytest.fixture(scope="session")
def box4_dual():
    return dualize(make_grid_box(4, 4))
