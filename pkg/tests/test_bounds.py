import pytest

from clique_incidence.bounds import (
    AT_LEAST,
    EQUAL,
    IMPLIES,
    bound_suite,
    corpus_graph,
    incidence_identity_failures,
    random_bound_corpus,
    scan_partitions,
    spectral_report,
)
from clique_incidence.cliques import edge_partition, min_clique_partition
from clique_incidence.errors import SizeGuardError
from clique_incidence.graph import Graph, complete, cycle, empty, random_graph


def _by_id(records):
    return {r.theorem_id: r for r in records}


def test_octahedron_satisfies_every_bound(k222, k222_cover):
    records = bound_suite(k222, k222_cover)
    assert records
    assert not [r.theorem_id for r in records if r.failed]
    ids = [r.theorem_id for r in records]
    assert len(ids) == len(set(ids))


def test_octahedron_regular_shift(k222, k222_cover):
    records = _by_id(bound_suite(k222, k222_cover))
    shift = records["st_regular_spectral_shift"]
    assert shift.applicable and shift.holds
    assert shift.rhs == pytest.approx(1.0)
    assert records["st_regular_graph_tail"].rhs == pytest.approx(-2.0)
    assert records["clique_regular_laplacian_energy"].holds
    assert records["uniform_cover_companion_energy"].lhs == pytest.approx(6.0)
    # k = 4 < n = 6: E(P_G) = 6 against E(Q_F) + 2·4·3/6 - 6 = 6
    comparison = records["uniform_cover_partition_graph_energy"]
    assert comparison.lhs == pytest.approx(6.0) and comparison.rhs == pytest.approx(6.0)


def test_smallest_eigenvalue_bound_is_tight(t1eq, t1eq_cover):
    records = _by_id(bound_suite(t1eq, t1eq_cover))
    smallest = records["smallest_eigenvalue_vs_max_clique_degree"]
    assert smallest.relation == AT_LEAST
    assert smallest.lhs == pytest.approx(-2.0)
    assert smallest.slack == pytest.approx(0.0, abs=1e-9)
    rank_drop = records["smallest_eigenvalue_equality_forces_rank_drop"]
    assert rank_drop.relation == IMPLIES and rank_drop.applicable and rank_drop.holds
    assert not records["clique_regular_laplacian_energy"].applicable
    assert not [r.theorem_id for r in records.values() if r.failed]


def test_slack_sign_follows_the_claim(k222, k222_cover):
    for record in bound_suite(k222, k222_cover):
        if not record.applicable:
            assert record.lhs is None and record.slack is None and record.holds is None
        elif record.relation == EQUAL:
            assert record.slack <= 0.0


def test_isolated_vertex_skips_inertia_rank_bounds():
    # a triangle plus an isolated vertex: ν⁻ = 2 while n - rank(M_F) = 3
    g = Graph(4, ((0, 1), (0, 2), (1, 2)))
    records = _by_id(bound_suite(g, min_clique_partition(g, "exact")))
    for theorem_id in ("negative_inertia_vs_incidence_rank", "negative_inertia_vs_cover_size",
                       "negative_inertia_vs_clique_partition_number"):
        assert not records[theorem_id].applicable
        assert records[theorem_id].note == "graph has isolated vertices"
    assert not records["incidence_rank_equal_to_independence_fixes_inertia"].applicable
    assert not [r.theorem_id for r in records.values() if r.failed]


def test_edge_partition_records(k222):
    records = _by_id(bound_suite(k222, edge_partition(k222)))
    assert records["edge_partition_incidence_energy"].holds
    assert records["edge_partition_line_graph_energy"].holds
    assert records["line_graph_energy_vs_negative_inertia"].slack == pytest.approx(0.0, abs=1e-8)


def test_four_cycle_line_graph_energy_is_tight():
    # L(C_4) = C_4 has spectrum 2, 0, 0, -2
    g = cycle(4)
    record = _by_id(bound_suite(g, edge_partition(g)))["line_graph_energy_vs_negative_inertia"]
    assert record.holds
    assert record.lhs == pytest.approx(4.0)
    assert record.rhs == pytest.approx(4.0)
    assert record.slack == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("g", [empty(4), cycle(5), complete(5), random_graph(8, 0.5, 2)])
def test_degenerate_and_small_graphs(g):
    for cover in (edge_partition(g), min_clique_partition(g, "exact")):
        assert not [r.theorem_id for r in bound_suite(g, cover) if r.failed]


def test_spectral_report(k222, k222_cover):
    report = spectral_report(k222, k222_cover)
    data = report.to_dict()
    assert data["all_bounds_hold"]
    assert data["incidence_rank"] == 4
    assert data["independence_number"] == 2
    assert data["tau"] == 1
    assert data["clique_sizes"] == [3, 3, 3, 3]
    assert data["inertia"]["adjacency"] == [1, 2, 3]
    assert report.failed_bounds == []


def test_scan_triangle():
    scan = scan_partitions(complete(3))
    assert scan.count == 2 and scan.complete
    assert scan.min_max_clique_degree == 1
    assert scan.min_rank == 1
    assert scan.min_max_clique_size == 2
    assert scan.min_energy_bound == pytest.approx(4.0)
    assert scan.min_energy_bound_partition == ((0, 1, 2),)
    assert all(r.holds for r in scan.records)


def test_scan_octahedron(k222):
    scan = scan_partitions(k222)
    assert scan.complete
    assert scan.min_max_clique_degree == 2
    assert not [r for r in scan.records if r.failed]
    data = scan.to_dict()
    assert data["partitions_scanned"] == scan.count


def test_scan_partial():
    scan = scan_partitions(complete(4), limit=2)
    assert scan.count == 2 and not scan.complete
    assert all("partial scan" in r.note for r in scan.records)


def test_scan_guards():
    with pytest.raises(SizeGuardError):
        scan_partitions(empty(10))
    with pytest.raises(ValueError):
        scan_partitions(complete(3), limit=0)


def test_scan_with_isolated_vertex():
    records = _by_id(scan_partitions(Graph(4, ((0, 1), (0, 2), (1, 2)))).records)
    assert not records["negative_inertia_vs_min_incidence_rank"].applicable


def test_incidence_identities_hold(k222_cover, t1eq_cover):
    assert incidence_identity_failures(k222_cover) == []
    assert incidence_identity_failures(t1eq_cover) == []


def test_corpus_graph_is_seeded():
    g, seed = corpus_graph(3, 100)
    assert seed == 103
    assert corpus_graph(3, 100)[0] == g
    assert 4 <= g.n <= 9


def test_small_corpus():
    result = random_bound_corpus(25)
    assert result.graphs == 25
    assert result.records > 0
    assert result.ok, result.failures[:3]


@pytest.mark.slow
def test_full_corpus():
    result = random_bound_corpus(500, workers=2)
    assert result.ok, result.failures[:3]
