import numpy as np
import pytest

from clique_incidence.config import Tolerances
from clique_incidence.errors import CertificateError, SearchFailedError
from clique_incidence.graph import complete, cycle, path
from clique_incidence.search import numeric_q2_search

C4_ROWS = np.array([
    [1 / np.sqrt(2), 0.0],
    [0.5, 0.5],
    [0.0, 1 / np.sqrt(2)],
    [0.5, -0.5],
])


def test_complete_graph_rank_one():
    cert = numeric_q2_search(complete(5), 1, start=np.ones((5, 5)))
    assert cert.verified
    assert cert.c == 1.0
    assert cert.k == 1
    assert cert.provenance.startswith("numeric-search(seed=")
    assert np.allclose(cert.product, np.full((5, 5), 0.2))


def test_warm_start_from_known_projection():
    start = C4_ROWS @ C4_ROWS.T
    cert = numeric_q2_search(cycle(4), 2, seed=5, start=start, name="c4-search")
    assert cert.verified
    assert cert.name == "c4-search"
    assert cert.provenance == "numeric-search(seed=5)"
    assert np.allclose(cert.M.T @ cert.M, np.eye(2), atol=1e-9)


def test_impossible_pattern_fails_with_trace():
    # a rank-one projection with a zero entry has a zero row
    with pytest.raises(SearchFailedError) as info:
        numeric_q2_search(path(3), 1, seed=2, max_iterations=50)
    assert info.value.iterations == 50
    assert len(info.value.trace) == 50
    assert info.value.best_residual == min(info.value.trace)


def test_iteration_cap_comes_from_tolerances():
    with pytest.raises(SearchFailedError) as info:
        numeric_q2_search(path(3), 1, tol=Tolerances(search_max_iterations=7))
    assert info.value.iterations == 7


@pytest.mark.parametrize("k", [0, 4])
def test_rank_out_of_range(k):
    with pytest.raises(CertificateError):
        numeric_q2_search(cycle(4), k)


def test_bad_start_and_iterations():
    with pytest.raises(CertificateError):
        numeric_q2_search(cycle(4), 2, start=np.eye(3))
    with pytest.raises(CertificateError):
        numeric_q2_search(cycle(4), 2, max_iterations=0)


def test_search_is_seeded():
    with pytest.raises(SearchFailedError) as first:
        numeric_q2_search(path(3), 1, seed=9, max_iterations=20)
    with pytest.raises(SearchFailedError) as second:
        numeric_q2_search(path(3), 1, seed=9, max_iterations=20)
    assert first.value.trace == second.value.trace
