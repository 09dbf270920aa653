import numpy as np
import pytest

from cospread import (DomainError, ParseError, ValidationError, betweenness,
                      build_graph, centrality_report, connected_components,
                      core_numbers, density, read_edge_list)
from cospread.graph import write_edge_list

from conftest import complete_graph, random_graph


# ---------------------------------------------------------------------------
# Independent oracle: betweenness from all-pairs shortest-path counting.
# ---------------------------------------------------------------------------

def _bfs_counts(nbrs, n, s):
    dist = np.full(n, -1)
    sigma = np.zeros(n)
    dist[s] = 0
    sigma[s] = 1.0
    queue = [s]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in nbrs[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
            if dist[v] == dist[u] + 1:
                sigma[v] += sigma[u]
    return dist, sigma


def brute_betweenness(g):
    n = g.node_count
    nbrs = g.neighbor_lists()
    dist = np.empty((n, n))
    sigma = np.empty((n, n))
    for s in range(n):
        dist[s], sigma[s] = _bfs_counts(nbrs, n, s)
    bc = np.zeros(n)
    for s in range(n):
        for t in range(n):
            if s == t or dist[s][t] < 0:
                continue
            if not g.directed and s > t:
                continue
            for v in range(n):
                if v in (s, t) or dist[s][v] < 0 or dist[v][t] < 0:
                    continue
                if dist[s][v] + dist[v][t] == dist[s][t]:
                    bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t]
    return bc


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_build_path_graph():
    g = build_graph([(0, 1), (1, 2)], directed=False)
    assert g.node_count == 3
    assert list(g.degree) == [1, 2, 1]


def test_build_dedup_and_self_loops():
    g = build_graph([(0, 1), (0, 1), (1, 1)], directed=False)
    assert g.edge_count == 1
    assert list(g.degree) == [1, 1]


def test_build_empty():
    g = build_graph([], directed=False)
    assert g.node_count == 0
    assert g.edge_count == 0
    count, labels = connected_components(g)
    assert count == 0 and labels.size == 0


def test_build_isolates_via_node_count():
    g = build_graph([], directed=False, node_count=4)
    assert g.node_count == 4
    assert connected_components(g)[0] == 4


def test_build_malformed_pair():
    with pytest.raises(ParseError, match="line 2"):
        build_graph([(0, 1), (1, 2, 3)], directed=False)
    with pytest.raises(ParseError):
        build_graph([(0, -1)], directed=False)


def test_build_node_count_too_small():
    with pytest.raises(ValidationError):
        build_graph([(0, 5)], directed=False, node_count=3)


def test_directed_stores_out_neighbors():
    g = build_graph([(0, 1), (0, 2)], directed=True)
    assert list(g.degree) == [2, 0, 0]
    assert list(g.in_degree()) == [0, 1, 1]


# ---------------------------------------------------------------------------
# Components / density
# ---------------------------------------------------------------------------

def test_components_two_disjoint_edges():
    g = build_graph([(0, 1), (2, 3)], directed=False)
    assert connected_components(g)[0] == 2


def test_components_path(path5):
    assert connected_components(path5)[0] == 1


def test_components_weak_for_directed():
    g = build_graph([(0, 1), (2, 1)], directed=True)
    assert connected_components(g)[0] == 1


def test_density_complete():
    assert density(complete_graph(5)) == pytest.approx(1.0)


def test_density_path(path5):
    assert density(path5) == pytest.approx(0.4)


def test_density_star(star6):
    assert density(star6) == pytest.approx(5 / 15)


def test_density_requires_two_nodes():
    with pytest.raises(DomainError):
        density(build_graph([], directed=False, node_count=1))


def test_density_relabel_invariant():
    rng = np.random.default_rng(0)
    g = random_graph(rng, 30, 0.15)
    perm = rng.permutation(30)
    relabeled = build_graph([(perm[a], perm[b]) for a, b in g.edge_array()],
                            directed=False, node_count=30)
    assert density(relabeled) == pytest.approx(density(g))


def test_tree_lower_bound():
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = random_graph(rng, 25, 0.2)
        count, _ = connected_components(g)
        if count == 1:
            assert 1 + g.edge_count >= g.node_count


# ---------------------------------------------------------------------------
# Betweenness
# ---------------------------------------------------------------------------

def test_betweenness_path3():
    g = build_graph([(0, 1), (1, 2)], directed=False)
    assert betweenness(g) == pytest.approx([0.0, 1.0, 0.0])


def test_betweenness_star(star6):
    bc = betweenness(star6)
    assert bc[0] == pytest.approx(10.0)  # C(5,2) leaf pairs
    assert bc[1:] == pytest.approx(np.zeros(5))


def test_betweenness_brute_force_oracle():
    rng = np.random.default_rng(7)
    cases = [random_graph(rng, n, p, directed=d)
             for n, p, d in [(12, 0.2, False), (20, 0.12, False), (30, 0.08, False),
                             (40, 0.05, False), (64, 0.05, False), (15, 0.15, True),
                             (25, 0.1, True), (40, 0.06, True)]]
    cases.append(build_graph([(i, i + 1) for i in range(9)], directed=False))  # path
    cases.append(complete_graph(8))
    for g in cases:
        assert betweenness(g) == pytest.approx(brute_betweenness(g)), g
    # disconnected case
    g = build_graph([(0, 1), (1, 2), (4, 5)], directed=False, node_count=7)
    assert betweenness(g) == pytest.approx(brute_betweenness(g))


def test_betweenness_isolated_node_zero():
    g = build_graph([(0, 1), (1, 2)], directed=False, node_count=4)
    assert betweenness(g)[3] == 0.0


def test_betweenness_permutation_equivariant():
    rng = np.random.default_rng(5)
    g = random_graph(rng, 24, 0.15)
    perm = rng.permutation(24)
    relabeled = build_graph([(perm[a], perm[b]) for a, b in g.edge_array()],
                            directed=False, node_count=24)
    assert betweenness(relabeled)[perm] == pytest.approx(betweenness(g))


def test_betweenness_sampled_estimate_near_exact():
    # Averaged over 100 pivot-sampled runs, the estimate should land within
    # 10% (relative L1) of the exact values on a random 50-node graph.
    rng = np.random.default_rng(13)
    g = random_graph(rng, 50, 0.1)
    exact = betweenness(g)
    acc = np.zeros(50)
    for run in range(100):
        acc += betweenness(g, sample_pivots=25, rng_seed=run)
    avg = acc / 100
    assert np.abs(avg - exact).sum() <= 0.10 * exact.sum()


def test_betweenness_pivots_clamped_to_exact():
    g = complete_graph(6)
    assert betweenness(g, sample_pivots=100) == pytest.approx(betweenness(g))


# ---------------------------------------------------------------------------
# Core numbers
# ---------------------------------------------------------------------------

def test_core_triangle():
    g = build_graph([(0, 1), (1, 2), (2, 0)], directed=False)
    assert list(core_numbers(g)) == [2, 2, 2]


def test_core_star(star6):
    assert list(core_numbers(star6)) == [1, 1, 1, 1, 1, 1]


def test_core_k4_plus_pendant():
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)] + [(3, 4)]
    g = build_graph(edges, directed=False)
    assert list(core_numbers(g)) == [3, 3, 3, 3, 1]


def test_core_bounded_by_degree():
    rng = np.random.default_rng(2)
    g = random_graph(rng, 40, 0.12)
    assert (core_numbers(g) <= g.degree).all()


def test_core_permutation_equivariant():
    rng = np.random.default_rng(3)
    g = random_graph(rng, 30, 0.15)
    perm = rng.permutation(30)
    relabeled = build_graph([(perm[a], perm[b]) for a, b in g.edge_array()],
                            directed=False, node_count=30)
    assert (core_numbers(relabeled)[perm] == core_numbers(g)).all()


def test_centrality_report_fields():
    g = build_graph([(0, 1), (1, 2)], directed=True, node_count=4)
    rep = centrality_report(g)
    assert rep.betweenness[3] == 0.0
    assert (rep.core_number <= g.undirected_view().degree).all()
    assert list(rep.in_degree) == [0, 1, 1, 0]
    assert list(rep.out_degree) == [1, 1, 0, 0]


# ---------------------------------------------------------------------------
# Edge-list files
# ---------------------------------------------------------------------------

def test_edge_list_roundtrip(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# comment\nu1 u2\nu2,u3\nu1 u3  # trailing\n")
    edges, id_map = read_edge_list(path)
    assert id_map == {"u1": 0, "u2": 1, "u3": 2}
    g = build_graph(edges, directed=False, node_count=len(id_map))
    assert g.edge_count == 3
    out = tmp_path / "out.txt"
    write_edge_list(out, g)
    edges2, _ = read_edge_list(out)
    g2 = build_graph(edges2, directed=False, node_count=3)
    assert np.array_equal(g.edge_array(), g2.edge_array())


def test_edge_list_parse_error_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n0 1 2\n")
    with pytest.raises(ParseError, match="line 2"):
        read_edge_list(path)
