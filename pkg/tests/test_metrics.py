import json

import numpy as np
import pytest

from investnet import (ClusteringPolicy, DegenerateGraphError, DensityMode,
                       EmptyGraphError, NoPairsError, OutOfRangeError,
                       PathScope, apsp_stats, average_clustering, build_graph,
                       compute_report, degree_distribution, density,
                       from_edge_array, gen_ba, gen_er, local_clustering,
                       report_to_dict, sssp_bfs, subgraph, triangle_count)
from oracles import (count_triangles_exhaustive, floyd_warshall,
                     fw_diameter_apl, local_clustering_direct, random_graph,
                     INF)

TRIANGLE = [("A", "B"), ("B", "C"), ("C", "A")]
INCLUDE = ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO
EXCLUDE = ClusteringPolicy.EXCLUDE_LOW_DEGREE


def star(k):
    return build_graph([("hub", f"leaf{i}") for i in range(k)])


def complete(n):
    return from_edge_array(n, [(i, j) for i in range(n)
                               for j in range(i + 1, n)])


def test_degree_distribution_star():
    dist = degree_distribution(star(4))
    assert dist.histogram == {1: 4, 4: 1}
    assert dist.pdf == {1: 0.8, 4: 0.2}
    assert dist.n == 5


def test_degree_distribution_triangle_and_empty():
    assert degree_distribution(build_graph(TRIANGLE)).histogram == {2: 3}
    with pytest.raises(EmptyGraphError):
        degree_distribution(build_graph([]))


def test_degree_distribution_pdf_sums_to_one():
    g = random_graph(40, 0.1, 8)
    dist = degree_distribution(g)
    assert abs(sum(dist.pdf.values()) - 1.0) < 1e-12
    assert sum(dist.histogram.values()) == g.n
    assert all(c > 0 for c in dist.histogram.values())


def test_density_reference_counts():
    # two reference count pairs and the densities they must reproduce
    g_small = gen_er(182, 157, 0)
    assert density(g_small) == pytest.approx(0.00953, abs=1e-5)
    g_large = gen_er(1025, 913, 0)
    assert density(g_large) == pytest.approx(0.00174, abs=1e-5)


def test_density_complete_graphs():
    for n in range(2, 9):
        assert density(complete(n)) == 1.0
    assert density(gen_er(6, 0, 0)) == 0.0


def test_density_bipartite_mode():
    s = star(4)  # 1 startup-side node, 4 investor-side nodes, 4 edges
    assert density(s, DensityMode.BIPARTITE) == 1.0
    assert density(s, DensityMode.UNIPARTITE) == pytest.approx(0.4)
    # a BOTH node counts on both sides: U={A,W}, V={W,B}; m=2 -> 0.5
    g = build_graph([("A", "W"), ("W", "B")])
    assert density(g, DensityMode.BIPARTITE) == 0.5


def test_density_degenerate():
    with pytest.raises(DegenerateGraphError):
        density(build_graph([]))
    only_left = from_edge_array(2, [])
    with pytest.raises(DegenerateGraphError):
        density(only_left, DensityMode.BIPARTITE)


def test_sssp_path():
    g = build_graph([("A", "B"), ("B", "C")])
    assert sssp_bfs(g, 0).tolist() == [0, 1, 2]


def test_sssp_unreachable_marker():
    g = build_graph([("A", "B"), ("X", "Y")])
    assert sssp_bfs(g, 0).tolist() == [0, 1, -1, -1]
    with pytest.raises(OutOfRangeError):
        sssp_bfs(g, 4)


def test_sssp_matches_floyd_warshall():
    g = random_graph(20, 0.2, 3)
    oracle = floyd_warshall(g)
    for source in range(g.n):
        got = sssp_bfs(g, source).astype(np.int64)
        expected = oracle[source].copy()
        expected[expected >= INF] = -1
        assert np.array_equal(got, expected)


def test_apsp_path_of_four():
    g = build_graph([("a", "b"), ("b", "c"), ("c", "d")])
    stats = apsp_stats(g, PathScope.WHOLE_GRAPH)
    assert stats.diameter == 3
    assert stats.average_path_length == pytest.approx(5 / 3)
    assert stats.reachable_pairs == 6
    assert stats.eccentricity.tolist() == [3, 2, 2, 3]


def test_apsp_triangle():
    stats = apsp_stats(build_graph(TRIANGLE))
    assert stats.diameter == 1
    assert stats.average_path_length == 1.0


def test_apsp_matches_floyd_warshall():
    g = random_graph(25, 0.15, 11)
    stats = apsp_stats(g, PathScope.WHOLE_GRAPH)
    diameter, apl, pairs = fw_diameter_apl(g)
    assert stats.diameter == diameter
    assert stats.average_path_length == apl
    assert stats.reachable_pairs == pairs


def test_apsp_scope_and_errors():
    g = build_graph([("a", "b"), ("b", "c"), ("x", "y")])
    lcc = apsp_stats(g, PathScope.LARGEST_COMPONENT)
    assert lcc.diameter == 2
    assert lcc.reachable_pairs == 3
    assert lcc.eccentricity.tolist() == [2, 1, 2, -1, -1]
    whole = apsp_stats(g, PathScope.WHOLE_GRAPH)
    assert whole.reachable_pairs == 4
    with pytest.raises(NoPairsError):
        apsp_stats(gen_er(5, 0, 0))


def test_parallel_sweep_is_bit_identical():
    g = random_graph(60, 0.08, 21)
    seq = apsp_stats(g, PathScope.WHOLE_GRAPH, workers=1)
    par = apsp_stats(g, PathScope.WHOLE_GRAPH, workers=4)
    assert seq.diameter == par.diameter
    assert seq.average_path_length == par.average_path_length
    assert np.array_equal(seq.eccentricity, par.eccentricity)


def test_triangle_count_examples():
    assert triangle_count(build_graph(TRIANGLE)) == 1
    assert triangle_count(complete(4)) == 4
    assert triangle_count(star(6)) == 0


def test_triangle_count_matches_enumeration():
    g = random_graph(30, 0.2, 5)
    assert triangle_count(g) == count_triangles_exhaustive(g)


def test_local_clustering_examples():
    t = build_graph(TRIANGLE)
    assert local_clustering(t, 0) == 1.0
    s = star(5)
    assert local_clustering(s, 0) == 0.0
    k4_minus_edge = from_edge_array(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert local_clustering(k4_minus_edge, 0) == pytest.approx(2 / 3)
    with pytest.raises(OutOfRangeError):
        local_clustering(t, 9)


def test_local_clustering_matches_direct_count():
    g = random_graph(25, 0.25, 17)
    for v in range(g.n):
        assert local_clustering(g, v) == pytest.approx(
            local_clustering_direct(g, v), abs=1e-9)


def test_average_clustering_examples():
    t = build_graph(TRIANGLE)
    assert average_clustering(t, INCLUDE) == 1.0
    assert average_clustering(t, EXCLUDE) == 1.0
    assert average_clustering(star(4), INCLUDE) == 0.0
    # triangle plus one pendant: locals are 1, 1, 1/3, 0
    g = from_edge_array(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    assert average_clustering(g, INCLUDE) == pytest.approx(7 / 12)
    assert average_clustering(g, EXCLUDE) == pytest.approx(7 / 9)


def test_average_clustering_degenerate():
    with pytest.raises(DegenerateGraphError):
        average_clustering(build_graph([]))
    no_deg2 = build_graph([("a", "b"), ("x", "y")])
    with pytest.raises(DegenerateGraphError):
        average_clustering(no_deg2, EXCLUDE)
    assert average_clustering(no_deg2, INCLUDE) == 0.0


def test_clustering_triangle_consistency():
    # sum over nodes of C_v * C(deg_v, 2) equals 3 * triangle count
    for seed in range(5):
        g = random_graph(28, 0.2, 100 + seed)
        weighted = sum(
            local_clustering(g, v) * d * (d - 1) / 2
            for v, d in enumerate(g.degrees))
        assert weighted == pytest.approx(3 * triangle_count(g), abs=1e-9)


def _metric_tuple(g):
    stats = apsp_stats(g, PathScope.WHOLE_GRAPH)
    return (g.n, g.m, density(g), stats.diameter,
            stats.average_path_length, average_clustering(g),
            triangle_count(g))


def test_metrics_invariant_under_edge_permutation():
    rng = np.random.default_rng(5)
    pairs = [(f"s{i}", f"t{j}") for i, j in
             zip(rng.integers(0, 10, 40), rng.integers(10, 20, 40))]
    base = _metric_tuple(build_graph(pairs))
    for _ in range(5):
        shuffled = [pairs[i] for i in rng.permutation(len(pairs))]
        assert _metric_tuple(build_graph(shuffled)) == base


def test_metrics_invariant_under_relabeling():
    g = random_graph(22, 0.18, 42)
    perm = np.random.default_rng(1).permutation(g.n)
    relabel = {i: f"x{perm[i]}" for i in range(g.n)}
    pairs = [(relabel[int(u)], relabel[int(v)]) for u, v in g.edge_array()]
    h = build_graph(pairs)
    gs = apsp_stats(g, PathScope.WHOLE_GRAPH)
    hs = apsp_stats(h, PathScope.WHOLE_GRAPH)
    assert (gs.diameter, gs.average_path_length) == \
        (hs.diameter, hs.average_path_length)
    assert average_clustering(g) == pytest.approx(average_clustering(h))


def test_compute_report_triangle():
    rep = compute_report(build_graph(TRIANGLE))
    assert (rep.n, rep.m) == (3, 3)
    assert rep.density == 1.0
    assert rep.path_stats.diameter == 1
    assert rep.path_stats.average_path_length == 1.0
    assert rep.average_clustering == 1.0
    assert rep.strictly_bipartite is False
    assert rep.power_law is None  # single distinct degree, no fit


def test_compute_report_disjoint_edges():
    rep = compute_report(build_graph([("a", "b"), ("x", "y")]))
    assert rep.component_sizes == (2, 2)
    assert rep.path_stats.diameter == 1
    assert rep.path_stats.scope is PathScope.LARGEST_COMPONENT


def test_compute_report_records_options():
    g = random_graph(15, 0.3, 2)
    rep = compute_report(g, scope=PathScope.WHOLE_GRAPH,
                         clustering_policy=EXCLUDE,
                         density_mode=DensityMode.UNIPARTITE)
    assert rep.clustering_policy is EXCLUDE
    assert rep.path_stats.scope is PathScope.WHOLE_GRAPH
    assert rep.density_mode is DensityMode.UNIPARTITE
    with pytest.raises(DegenerateGraphError):
        compute_report(from_edge_array(1, []))


def test_compute_report_workers_identical():
    g = gen_ba(300, 2, 9)
    one = json.dumps(report_to_dict(compute_report(g, workers=1)))
    four = json.dumps(report_to_dict(compute_report(g, workers=4)))
    assert one == four


def test_ba_log_binned_tail_monotone():
    # the low-degree side dominates: log2-binned counts never increase
    # from the bin containing degree 10 onward
    g = gen_ba(10000, 2, 7)
    hist = degree_distribution(g).histogram
    bins = {}
    for d, c in hist.items():
        bins[2 ** (d.bit_length() - 1)] = bins.get(2 ** (d.bit_length() - 1), 0) + c
    counts = [c for low, c in sorted(bins.items()) if low >= 8]
    assert all(a >= b for a, b in zip(counts, counts[1:]))


def test_random_nonhub_removal_barely_moves_apl():
    # removing one low-degree node changes largest-component APL < 5%
    # in at least 95% of trials
    g = gen_ba(2000, 2, 3)
    before = apsp_stats(g).average_path_length
    median = np.median(g.degrees)
    candidates = np.flatnonzero(g.degrees <= median)
    rng = np.random.default_rng(12)
    stable = 0
    for _ in range(40):
        victim = rng.choice(candidates)
        sub = subgraph(g, np.setdiff1d(np.arange(g.n), [victim]))
        after = apsp_stats(sub).average_path_length
        if abs(after - before) / before < 0.05:
            stable += 1
    assert stable >= 38
