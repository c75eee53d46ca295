import pytest

import helpers
from trismooth import build_mesh, canonical_structured, canonical_unstructured


@pytest.fixture
def unit_square():
    return build_mesh([[0, 0], [1, 0], [1, 1], [0, 1]], [[0, 1, 2], [0, 2, 3]])


@pytest.fixture
def square_fan():
    return helpers.square_fan()


@pytest.fixture
def hexagon_fan():
    return helpers.hexagon_fan()


@pytest.fixture
def thin_pair():
    return helpers.thin_pair()


@pytest.fixture
def pacman_star():
    return helpers.pacman_star()


@pytest.fixture
def structured():
    return canonical_structured()


@pytest.fixture
def unstructured():
    return canonical_unstructured()
