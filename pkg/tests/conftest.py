import pytest

import doily


@pytest.fixture(scope="session")
def w2_sym():
    return doily.build_w2_symplectic()


@pytest.fixture(scope="session")
def w2_quad():
    return doily.build_q42()


@pytest.fixture(scope="session")
def vspace(w2_sym):
    return doily.build_veldkamp_space(w2_sym)


@pytest.fixture(scope="session")
def vspace_quad(w2_quad):
    return doily.build_veldkamp_space(w2_quad)


@pytest.fixture(scope="session")
def correspondence(w2_sym):
    return doily.build_bijection(w2_sym)


@pytest.fixture(scope="session")
def grid_geometry():
    rows = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    cols = [(0, 3, 6), (1, 4, 7), (2, 5, 8)]
    return doily.PointLineGeometry(9, rows + cols)


@pytest.fixture(scope="session")
def single_line_geometry():
    return doily.PointLineGeometry(3, [(0, 1, 2)])
