import itertools

import networkx as nx
import numpy as np
import pytest

from clique_incidence.errors import SizeGuardError
from clique_incidence.graph import Graph, complete, cycle, empty, path, random_graph, relabel, star
from clique_incidence.isomorphism import (
    are_isomorphic,
    automorphism_count,
    canonical_form,
    canonical_graph,
    enumerate_graphs,
    is_subgraph_up_to_iso,
)


@pytest.mark.parametrize("seed", range(6))
def test_canonical_form_is_label_invariant(seed):
    g = random_graph(8, 0.5, seed)
    perm = np.random.default_rng(seed).permutation(8)
    h = relabel(g, perm)
    assert canonical_form(g) == canonical_form(h)
    assert canonical_graph(g) == canonical_graph(h)
    assert are_isomorphic(g, h)


def test_canonical_form_separates_classes():
    graphs = [random_graph(7, 0.5, s) for s in range(25)]
    for g, h in itertools.combinations(graphs, 2):
        assert are_isomorphic(g, h) == nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def test_regular_graphs_with_equal_colours():
    # C6 and two triangles are both 2-regular on six vertices
    two_triangles = Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert not are_isomorphic(cycle(6), two_triangles)


@pytest.mark.parametrize("g, count", [
    (complete(4), 24),
    (cycle(5), 10),
    (cycle(6), 12),
    (path(4), 2),
    (star(3), 6),
    (empty(3), 6),
])
def test_automorphism_count(g, count):
    assert automorphism_count(g) == count


@pytest.mark.parametrize("n, m, count", [
    (4, 0, 1), (4, 1, 1), (4, 2, 2), (4, 3, 3), (4, 4, 2), (4, 5, 1), (4, 6, 1),
    (7, 4, 10),
    (8, 4, 11),
    (8, 5, 24),
])
def test_enumerate_graphs_counts(n, m, count):
    graphs = enumerate_graphs(n, m)
    assert len(graphs) == count
    assert all(g.n == n and g.m == m for g in graphs)
    assert len({canonical_form(g) for g in graphs}) == count


def test_enumerate_graphs_returns_canonical_representatives():
    for g in enumerate_graphs(6, 3):
        assert canonical_graph(g) == g


def test_enumerate_graphs_out_of_range():
    assert enumerate_graphs(3, 4) == []
    with pytest.raises(SizeGuardError):
        enumerate_graphs(9, 2)


def test_subgraph_embedding():
    found, embedding = is_subgraph_up_to_iso(path(3), cycle(4))
    assert found
    assert len(set(embedding.values())) == 3
    for u, v in path(3).edges:
        assert cycle(4).has_edge(embedding[u], embedding[v])


def test_subgraph_embedding_absent():
    assert is_subgraph_up_to_iso(complete(3), cycle(4)) == (False, None)
    assert is_subgraph_up_to_iso(star(3), cycle(6)) == (False, None)


def test_subgraph_embedding_guard():
    with pytest.raises(SizeGuardError):
        is_subgraph_up_to_iso(empty(2), empty(11))
