from fractions import Fraction

import numpy as np
import pytest
import sympy

from clique_incidence.config import Tolerances
from clique_incidence.errors import (
    ConvergenceError,
    IndefiniteMatrixError,
    LinearAlgebraError,
    NotSymmetricError,
    RankDeficientError,
)
from clique_incidence.linalg import (
    distinct_count,
    eigenvalues,
    exact_rank,
    gram_schmidt_columns,
    is_integral,
    pattern_of,
    psd_sqrt_factor,
    rank_and_nullspace,
    spectrum_clusters,
    sym_eigen,
)


def _random_symmetric(rng, n):
    X = rng.standard_normal((n, n))
    return (X + X.T) / 2.0


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_jacobi_matches_numpy(rng, n):
    S = _random_symmetric(rng, n)
    spec = sym_eigen(S)
    assert np.allclose(spec.eigenvalues, np.sort(np.linalg.eigvalsh(S))[::-1], atol=1e-10)
    V = spec.eigenvectors
    assert np.allclose(V.T @ V, np.eye(n), atol=1e-10)
    assert np.allclose(V @ np.diag(spec.eigenvalues) @ V.T, S, atol=1e-10)


def test_jacobi_on_diagonal_matrix_needs_no_sweeps():
    spec = sym_eigen(np.diag([1.0, 3.0, 2.0]))
    assert spec.sweeps == 0
    assert list(spec.eigenvalues) == [3.0, 2.0, 1.0]


def test_jacobi_rejects_asymmetric():
    with pytest.raises(NotSymmetricError):
        sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(LinearAlgebraError):
        sym_eigen(np.zeros((2, 3)))


def test_jacobi_sweep_cap(rng):
    with pytest.raises(ConvergenceError):
        sym_eigen(_random_symmetric(rng, 6), Tolerances(jacobi_max_sweeps=1))


def test_spectrum_clusters_and_distinct_count():
    clusters = spectrum_clusters([2.0, 2.0 + 1e-12, 0.0, -1.0])
    assert [mult for _, mult in clusters] == [2, 1, 1]
    assert [value for value, _ in clusters] == pytest.approx([2.0, 0.0, -1.0])
    assert spectrum_clusters([]) == []
    J = np.ones((4, 4))
    assert distinct_count(sym_eigen(J)) == 2


def test_eigenvalues_of_complete_graph():
    values = eigenvalues(np.ones((5, 5)) - np.eye(5))
    assert np.allclose(values, [4, -1, -1, -1, -1])


def test_rank_and_nullspace(rng):
    A = rng.standard_normal((5, 3)) @ rng.standard_normal((3, 6))
    rank, null = rank_and_nullspace(A)
    assert rank == 3
    assert null.shape == (6, 3)
    assert np.allclose(A @ null, 0.0, atol=1e-10)
    assert rank_and_nullspace(np.zeros((0, 4)))[1].shape == (4, 4)


def test_exact_rank_matches_sympy(rng):
    A = rng.integers(-2, 3, size=(6, 5))
    A[:, 4] = A[:, 0] - 2 * A[:, 1]
    assert exact_rank(A) == sympy.Matrix(A.tolist()).rank()


def test_exact_rank_handles_fractions_and_rationals():
    assert exact_rank([[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 2), 1]]) == 1
    assert exact_rank(sympy.Matrix([[sympy.Rational(1, 2), 1], [1, 2]])) == 1
    with pytest.raises(LinearAlgebraError):
        exact_rank(sympy.Matrix([[sympy.sqrt(2), 1]]))


def test_is_integral():
    assert is_integral(np.eye(3))
    assert is_integral(np.array([[1, 2]]))
    assert not is_integral(np.array([[0.5]]))


def test_gram_schmidt_columns(rng):
    A = rng.standard_normal((6, 3))
    Q = gram_schmidt_columns(A)
    assert np.allclose(Q.T @ Q, np.eye(3), atol=1e-12)
    # first column keeps its direction
    assert np.allclose(Q[:, 0], A[:, 0] / np.linalg.norm(A[:, 0]))
    with pytest.raises(RankDeficientError):
        gram_schmidt_columns(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_psd_sqrt_factor(rng):
    X = rng.standard_normal((4, 2))
    S = X @ X.T
    B = psd_sqrt_factor(S)
    assert np.allclose(B, B.T)
    assert np.allclose(B.T @ B, S, atol=1e-10)


def test_psd_sqrt_factor_rejects_indefinite():
    with pytest.raises(IndefiniteMatrixError) as info:
        psd_sqrt_factor(np.diag([1.0, -0.5]))
    assert info.value.most_negative == pytest.approx(-0.5)


def test_pattern_of():
    M = np.array([[2.0, 1e-9, 0.5], [1e-9, 1.0, 0.0], [0.5, 0.0, 3.0]])
    assert pattern_of(M).tolist() == [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    assert pattern_of(M, zero_tol=1e-12).tolist() == [[0, 1, 1], [1, 0, 0], [1, 0, 0]]
