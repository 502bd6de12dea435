import pytest

from starcover.cover import star_cover
from starcover.graph import complete_graph, cube_graph, truncated_tetrahedron_graph
from starcover.spectra import charpoly


@pytest.fixture(scope="session")
def x3():
    return star_cover(3)


@pytest.fixture(scope="session")
def x3_charpoly(x3):
    return charpoly(x3.total)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def cube():
    return cube_graph()


@pytest.fixture(scope="session")
def truncated_tetrahedron():
    return truncated_tetrahedron_graph()


@pytest.fixture(scope="session")
def c3_members(x3):
    return next(s for s in x3.group.subgroups() if len(s) == 3)


@pytest.fixture(scope="session")
def c2_members(x3):
    return next(s for s in x3.group.subgroups() if len(s) == 2)
