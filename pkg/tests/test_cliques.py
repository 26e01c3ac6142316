import numpy as np
import pytest

from clique_incidence.cliques import (
    COVER,
    PARTITION,
    classify_regularity,
    clique_partition_graph,
    clique_signless_laplacian,
    cover_from_json,
    edge_partition,
    enumerate_partitions,
    find_cover_violations,
    incidence,
    min_clique_partition,
    validate_cover,
)
from clique_incidence.errors import CoverError, SizeGuardError
from clique_incidence.graph import (
    Graph,
    complete,
    complete_multipartite,
    cycle,
    empty,
    line_graph,
    random_graph,
)
from clique_incidence.isomorphism import are_isomorphic


def test_validate_cover_accepts_partition(k222, k222_cover):
    assert k222_cover.k == 4
    assert list(k222_cover.clique_degrees) == [2] * 6
    assert list(k222_cover.sizes) == [3] * 4
    assert k222_cover.clique_degrees.sum() == k222_cover.sizes.sum()


def test_violations_are_all_reported(k222):
    cliques = [(0, 1, 5), (0, 1, 2), (0, 3)]
    with pytest.raises(CoverError) as info:
        validate_cover(k222, cliques)
    kinds = {v.kind for v in info.value.violations}
    assert {"not a clique", "uncovered edge", "doubly covered edge"} <= kinds
    not_a_clique = [v for v in info.value.violations if v.kind == "not a clique"]
    assert not_a_clique[0].clique_index == 2 and not_a_clique[0].edge == (0, 3)


def test_cover_kind_allows_overlaps():
    g = complete(4)
    cliques = [(0, 1, 2), (1, 2, 3), (0, 3)]
    assert find_cover_violations(g, cliques, PARTITION)
    assert not find_cover_violations(g, cliques, COVER)
    cover = validate_cover(g, cliques, COVER)
    assert cover.kind == COVER


def test_trivial_and_out_of_range_cliques():
    g = cycle(4)
    kinds = [v.kind for v in find_cover_violations(g, [(0,), (0, 9)], PARTITION)]
    assert "trivial clique" in kinds and "vertex out of range" in kinds


def test_edge_partition_is_valid():
    g = random_graph(8, 0.5, 5)
    cover = edge_partition(g)
    assert not find_cover_violations(g, cover.cliques, PARTITION)
    assert cover.k == g.m


@pytest.mark.parametrize("g, cp", [
    (complete(6), 1),
    (cycle(5), 5),
    (complete_multipartite(2, 2, 2), 4),
    (empty(3), 0),
])
def test_exact_clique_partition_number(g, cp):
    cover = min_clique_partition(g, "exact")
    assert cover.k == cp
    assert cover.provenance == "exact"
    assert not find_cover_violations(g, cover.cliques, PARTITION)


@pytest.mark.parametrize("seed", range(6))
def test_exact_partition_is_minimum_over_enumeration(seed):
    g = random_graph(7, 0.6, seed)
    best = min(len(p) for p in enumerate_partitions(g))
    assert min_clique_partition(g, "exact").k == best


def test_exact_partition_guard():
    with pytest.raises(SizeGuardError):
        min_clique_partition(empty(13), "exact")


@pytest.mark.parametrize("seed", range(5))
def test_greedy_partition_is_valid_and_seeded(seed):
    g = random_graph(10, 0.5, seed)
    cover = min_clique_partition(g, "greedy", seed)
    assert not find_cover_violations(g, cover.cliques, PARTITION)
    assert cover.cliques == min_clique_partition(g, "greedy", seed).cliques
    assert cover.k >= min_clique_partition(g, "exact").k


def test_unknown_partition_mode():
    with pytest.raises(ValueError):
        min_clique_partition(complete(3), "random")


def test_enumerate_partitions_counts():
    assert sorted(enumerate_partitions(complete(3))) == [((0, 1), (0, 2), (1, 2)), ((0, 1, 2),)]
    # K4 itself, one triangle plus three edges (four ways), all six edges
    assert len(list(enumerate_partitions(complete(4)))) == 6
    assert len(list(enumerate_partitions(complete(4), limit=2))) == 2
    assert list(enumerate_partitions(empty(2))) == [()]


def test_binary_incidence_and_identities(k222_cover):
    inc = incidence(k222_cover)
    M = inc.matrix
    assert M.shape == (6, 4)
    assert set(np.unique(M)) == {0, 1}
    qf, rf = clique_signless_laplacian(inc)
    A = k222_cover.graph.adjacency
    assert np.array_equal(qf, np.diag(k222_cover.clique_degrees) + A)
    pg = clique_partition_graph(k222_cover)
    assert np.array_equal(rf, np.diag(k222_cover.sizes) + pg.adjacency)


def test_single_clique_incidence_is_all_ones():
    cover = min_clique_partition(complete(5))
    assert incidence(cover).matrix.tolist() == [[1]] * 5
    assert clique_partition_graph(cover) == Graph(1, ())


def test_weighted_incidence(k222_cover):
    weights = np.array(incidence(k222_cover).matrix, dtype=float) * np.linspace(1.0, 2.0, 6)[:, None]
    inc = incidence(k222_cover, "weighted", weights)
    assert inc.mode == "weighted"
    mapped = {(i, j): 2.0 for j, c in enumerate(k222_cover.cliques) for i in c}
    assert np.allclose(incidence(k222_cover, "weighted", mapped).matrix,
                       2.0 * incidence(k222_cover).matrix)


def test_weighted_incidence_rejects_bad_weights(k222_cover):
    weights = np.array(incidence(k222_cover).matrix, dtype=float)
    weights[0, 0] = 0.0
    with pytest.raises(CoverError):
        incidence(k222_cover, "weighted", weights)
    with pytest.raises(CoverError):
        incidence(k222_cover, "weighted")
    with pytest.raises(CoverError):
        incidence(k222_cover, "weighted", np.ones((6, 3)))


def test_weighted_product_must_stay_in_pattern():
    # the edge 01 lies in both cliques and its two contributions cancel
    g = complete(3)
    cover = validate_cover(g, [(0, 1, 2), (0, 1)], COVER)
    weights = np.array([[1.0, 1.0], [1.0, -1.0], [1.0, 0.0]])
    with pytest.raises(CoverError) as info:
        incidence(cover, "weighted", weights)
    assert any(v.kind == "pattern mismatch" for v in info.value.violations)


def test_partition_graph_of_edges_is_line_graph():
    g = random_graph(7, 0.5, 8)
    assert are_isomorphic(clique_partition_graph(edge_partition(g)), line_graph(g))


def test_classify_regularity(t1eq_cover, k222_cover):
    reg = classify_regularity(edge_partition(cycle(6)))
    assert reg.t_regular and reg.t == 2 and reg.s_uniform and reg.s == 2 and reg.st_regular
    reg = classify_regularity(t1eq_cover)
    assert not reg.t_regular and reg.t is None
    assert not reg.s_uniform
    assert classify_regularity(k222_cover).to_dict() == {
        "t_regular": True, "t": 2, "s_uniform": True, "s": 3, "st_regular": True,
    }


def test_cover_json_round_trip(k222, k222_cover):
    loaded = cover_from_json(k222_cover.to_json())
    assert loaded.graph == k222
    assert loaded.cliques == k222_cover.cliques
    assert cover_from_json("[[0, 1, 5], [1, 2, 3], [0, 2, 4], [3, 4, 5]]", k222).k == 4


def test_cover_json_rejects_other_graph(k222_cover):
    with pytest.raises(CoverError):
        cover_from_json(k222_cover.to_json(), complete(6))
    with pytest.raises(CoverError):
        cover_from_json("[[0, 1]]")
