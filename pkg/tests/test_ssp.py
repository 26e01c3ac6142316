import numpy as np
import pytest

from clique_incidence.constructions import construct_complete, construct_fixed
from clique_incidence.errors import SspError
from clique_incidence.graph import Graph, complete, cycle, path
from clique_incidence.ssp import SspResult, check_ssp, complement_claims, supergraph_transfer


@pytest.mark.parametrize("n", [2, 3, 5])
def test_identity_has_full_kernel(n):
    result = check_ssp(np.eye(n))
    assert result.free_variables == n * (n - 1) // 2
    assert result.kernel_dimension == n * (n - 1) // 2
    assert result.exact_kernel_dimension == result.kernel_dimension
    assert not result.has_ssp


def test_complete_pattern_is_vacuously_ssp():
    result = check_ssp(np.ones((4, 4)))
    assert result.free_variables == 0
    assert result.has_ssp
    assert result.witness is None


def test_distinct_diagonal_has_ssp():
    assert check_ssp(np.diag([1.0, 2.0, 3.0])).has_ssp


def test_repeated_diagonal_has_witness():
    result = check_ssp(np.diag([1.0, 1.0, 2.0]))
    assert result.kernel_dimension == 1
    X = result.witness
    assert abs(X[0, 1]) > 0.5 and abs(X[0, 2]) < 1e-12 and abs(X[1, 2]) < 1e-12
    assert result.residuals["commutator"] < 1e-10


def test_path_adjacency_has_ssp():
    result = check_ssp(path(3).adjacency)
    assert result.has_ssp
    assert result.exact_kernel_dimension == 0


def test_four_cycle_adjacency_lacks_ssp():
    # the antipodal automorphism commutes with A and vanishes on its support
    A = cycle(4).adjacency.astype(float)
    result = check_ssp(A)
    assert not result.has_ssp
    X = result.witness
    assert np.allclose(A * X, 0.0)
    assert np.allclose(np.diag(X), 0.0)
    assert np.allclose(A @ X, X @ A, atol=1e-10)


@pytest.mark.parametrize("A", [np.diag([1.0, 1.0, 2.0]), cycle(4).adjacency, np.eye(3)])
def test_full_system_agrees(A):
    assert (check_ssp(A, full_system=True).kernel_dimension == check_ssp(A).kernel_dimension)


def test_irrational_matrix_has_no_exact_count():
    A = np.diag([1.0, np.sqrt(2.0), 3.0])
    result = check_ssp(A)
    assert result.exact_kernel_dimension is None
    assert result.exact_agrees is None
    assert result.has_ssp


def test_pattern_shape_is_checked():
    with pytest.raises(SspError):
        check_ssp(np.eye(3), pattern=np.zeros((2, 2)))


def test_result_dict():
    data = check_ssp(np.diag([1.0, 1.0, 2.0])).to_dict()
    assert data["kernel_dimension"] == 1 and data["has_ssp"] is False
    assert data["floating_kernel_dimension"] == 1 and data["exact_agrees"] is True
    assert len(data["witness"]) == 3


def test_exact_count_overrides_floating():
    result = SspResult(kernel_dimension=0, free_variables=3, constraint_rows=6,
                       exact_kernel_dimension=0, floating_kernel_dimension=1)
    assert result.has_ssp
    assert result.exact_agrees is False


def test_supergraph_transfer_from_complete():
    cert = construct_complete(4)
    claim = supergraph_transfer(cert.ssp, cert.product, complete(4), complete(4), source_name=cert.name)
    assert claim.q_bound == 2
    assert claim.spectrum[0][1] == 1 and claim.spectrum[1][1] == 3
    assert claim.to_dict()["source_name"] == "complete(4)"
    assert "≤ 2" in claim.statement


def test_supergraph_transfer_errors():
    cert = construct_complete(4)
    with pytest.raises(SspError):
        supergraph_transfer(cert.ssp, cert.product, complete(4), cycle(4))
    with pytest.raises(SspError):
        supergraph_transfer(cert.ssp, cert.product, complete(4), complete(5))
    c4 = cycle(4).adjacency.astype(float)
    with pytest.raises(SspError):
        supergraph_transfer(check_ssp(c4), c4, cycle(4), complete(4))
    with pytest.raises(SspError):
        supergraph_transfer(cert.ssp, cert.product, cycle(4), complete(4))


def test_complement_claims_use_removed_edges():
    paw = construct_fixed("paw")
    assert paw.ssp.has_ssp
    # a single edge embeds in every removed edge set
    claims = complement_claims([paw], Graph(7, ((0, 1),)))
    assert len(claims) == 1
    claim = claims[0]
    assert claim.q_bound == 2
    assert claim.target.m == 20
    assert set(claim.source.edge_set) <= set(claim.target.edge_set)


def test_kernel_dimension_is_permutation_invariant(rng):
    A = cycle(6).adjacency.astype(float) + np.diag(rng.standard_normal(6))
    perm = rng.permutation(6)
    P = np.eye(6)[perm]
    assert check_ssp(P @ A @ P.T).kernel_dimension == check_ssp(A).kernel_dimension
