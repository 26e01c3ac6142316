import numpy as np
import pytest

from clique_incidence.config import Tolerances
from clique_incidence.constructions import (
    CONSTRUCTION_ALIASES,
    FIXED_CONSTRUCTIONS,
    construct_complete,
    construct_fixed,
    construct_gram,
    construct_prism,
    construct_prism_join,
    gram_complete,
)
from clique_incidence.errors import CertificateError, IndefiniteMatrixError
from clique_incidence.graph import Graph, cartesian_product, complete
from clique_incidence.isomorphism import are_isomorphic

FIXED_C = {
    "spider": 1,
    "paw": 1,
    "k13_k3": 13,
    "bull_join": 9,
    "c5_join": 4,
    "triangle_square": 10,
}


@pytest.mark.parametrize("s", range(3, 9))
def test_prism(s):
    cert = construct_prism(s)
    assert cert.verified
    assert cert.c == s * s - 2 * s + 2
    assert (cert.n, cert.k) == (2 * s, s)
    assert cert.ssp.has_ssp
    assert cert.ssp.exact_kernel_dimension == 0
    assert are_isomorphic(cert.target, cartesian_product(complete(2), complete(s)))


@pytest.mark.parametrize("s", range(3, 7))
def test_prism_join(s):
    cert = construct_prism_join(s)
    assert cert.verified
    assert cert.c == s * s - 2 * s + 3
    assert (cert.n, cert.k) == (3 * s, s)
    assert [mult for _, mult in cert.spectrum] == [s, 2 * s]
    # K_s□K_2 joined to s new vertices, less a matching of size s
    assert cert.target.m == s * (s - 1) + s + 2 * s * s - s


def test_small_parameters_are_rejected():
    with pytest.raises(CertificateError):
        construct_prism(2)
    with pytest.raises(CertificateError):
        construct_prism_join(2)
    with pytest.raises(CertificateError):
        construct_complete(1)


@pytest.mark.parametrize("name, c", sorted(FIXED_C.items()))
def test_fixed_constructions(name, c):
    cert = construct_fixed(name)
    assert cert.verified
    assert cert.c == c
    assert cert.n == FIXED_CONSTRUCTIONS[name]
    assert cert.ssp.has_ssp
    assert cert.provenance == f"construction:{name}"


@pytest.mark.parametrize("n", [7, 8, 9])
def test_k3_star(n):
    cert = construct_fixed("k3_star", n)
    assert cert.verified
    assert cert.c == 11
    assert cert.target.m == n * (n - 1) // 2 - 3 - (n - 4)
    assert cert.ssp.has_ssp


def test_k3_star_needs_seven_vertices():
    with pytest.raises(CertificateError):
        construct_fixed("k3_star", 6)
    with pytest.raises(CertificateError):
        construct_fixed("k3_star")


@pytest.mark.parametrize("alias, n", [
    ("T1", None),
    ("H2_n7", None),
    ("K13_K3", None),
    ("bull_join", None),
    ("C5_join", None),
    ("fig414", None),
    ("K3_star", 8),
])
def test_published_names(alias, n):
    cert = construct_fixed(alias, n)
    same = construct_fixed(CONSTRUCTION_ALIASES.get(alias, alias), n)
    assert cert.verified
    assert cert.target == same.target
    assert cert.c == same.c
    assert np.allclose(cert.M, same.M)


def test_unknown_fixed_construction():
    with pytest.raises(CertificateError):
        construct_fixed("petersen")


def test_exact_entries_match_floats():
    cert = construct_fixed("c5_join")
    exact = np.array(cert.exact_matrix().evalf(20).tolist(), dtype=float)
    assert np.allclose(exact, cert.M)


BULL_JOIN_HEAD = np.array([
    [1.0, 0.0, 0.0],
    [1.0, 0.0, 1.0],
    [1.0, 1.0, 0.0],
    [0.0, np.sqrt(2.0), 0.0],
    [0.0, 0.0, np.sqrt(2.0)],
])

C5_JOIN_HEAD = np.array([
    [1.0, 0.0, 0.0],
    [1.0, 1.0, 0.0],
    [-1.0, 1.0, 1.0],
    [0.0, -1.0, 1.0],
    [0.0, 0.0, 1.0],
])


@pytest.mark.parametrize("name, head, c", [
    ("bull_join", BULL_JOIN_HEAD, 9.0),
    ("c5_join", C5_JOIN_HEAD, 4.0),
])
def test_gram_completion_rebuilds_fixed_targets(name, head, c):
    target = construct_fixed(name).target
    cert = construct_gram(f"{name}-gram", head, target, c, seed=3)
    assert cert.verified
    assert cert.target == target
    assert cert.provenance == "gram-completion(seed=3)"
    assert np.allclose(cert.M[:5], head)


def test_gram_completion_is_seeded():
    target = construct_fixed("c5_join").target
    adj = target.adjacency
    pattern2 = Graph.from_adjacency(adj[5:, 5:])
    first = gram_complete(C5_JOIN_HEAD, pattern2, adj[:5, 5:], 4.0, seed=11)
    second = gram_complete(C5_JOIN_HEAD, pattern2, adj[:5, 5:], 4.0, seed=11)
    assert np.array_equal(first, second)


def test_gram_completion_errors():
    target = construct_fixed("c5_join").target
    adj = target.adjacency
    pattern2 = Graph.from_adjacency(adj[5:, 5:])
    with pytest.raises(IndefiniteMatrixError):
        gram_complete(C5_JOIN_HEAD, pattern2, adj[:5, 5:], 1.0)
    with pytest.raises(CertificateError):
        gram_complete(C5_JOIN_HEAD, pattern2, adj[:4, 5:], 4.0)
    # two new rows cannot span the rank-three remainder
    with pytest.raises(CertificateError):
        gram_complete(C5_JOIN_HEAD, complete(2), np.ones((5, 2)), 9.0)


def test_gram_completion_gives_up_after_attempts():
    # every new row must be orthogonal to every row of M_1, which spans R^3
    with pytest.raises(CertificateError) as info:
        gram_complete(C5_JOIN_HEAD, complete(3), np.zeros((5, 3)), 4.0, tol=Tolerances(rotation_attempts=3))
    assert info.value.best_residual is not None
