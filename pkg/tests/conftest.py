import numpy as np
import pytest

from clique_incidence.cliques import validate_cover
from clique_incidence.graph import Graph

K222_EDGES = [(3, 5), (4, 5), (1, 5), (0, 5), (0, 1), (0, 2), (1, 2), (0, 4), (2, 4), (3, 4), (2, 3), (1, 3)]
K222_TRIANGLES = [(0, 1, 5), (1, 2, 3), (0, 2, 4), (3, 4, 5)]

T1EQ_EDGES = [(2, 6), (1, 2), (0, 1), (0, 6), (0, 5), (5, 6), (3, 6), (0, 2), (2, 5), (4, 5), (0, 3),
              (3, 5), (2, 3), (3, 4)]
T1EQ_CLIQUES = [(0, 1), (1, 2), (0, 2, 3, 5, 6), (3, 4), (4, 5)]


@pytest.fixture
def k222():
    """K_{2,2,2} labelled so that its four triangles partition the edges."""
    return Graph(6, tuple(K222_EDGES))


@pytest.fixture
def k222_cover(k222):
    return validate_cover(k222, K222_TRIANGLES)


@pytest.fixture
def t1eq():
    """Seven-vertex graph whose five-clique partition attains λ_7 = -t_1."""
    return Graph(7, tuple(T1EQ_EDGES))


@pytest.fixture
def t1eq_cover(t1eq):
    return validate_cover(t1eq, T1EQ_CLIQUES)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
