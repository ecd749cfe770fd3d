import numpy as np
import pytest

from curvemedian import (
    Ball,
    Sim1Config,
    UsageError,
    WeightedGraph,
    ball_radii,
    build_complete_graph,
    build_coverage_graph,
    cloud_diameter,
    compute_emst,
    generate_sim1,
    geodesic_pipeline,
    segment_covered,
    shortest_path,
    shortest_path_distances,
)

from oracles import floyd_warshall, min_spanning_weight_exhaustive


def random_cloud(rng, n=None, p=None):
    n = n or int(rng.integers(2, 30))
    p = p or int(rng.integers(1, 5))
    return rng.normal(0.0, 1.0, size=(n, p))


# ----------------------------------------------------------- complete graph

def test_complete_graph_collinear():
    g = build_complete_graph(np.array([[0.0], [1.0], [3.0]]))
    assert g.edges == [(0, 1, 1.0), (0, 2, 3.0), (1, 2, 2.0)]


def test_complete_graph_single_point():
    g = build_complete_graph(np.array([[5.0, 5.0]]))
    assert g.n == 1 and g.edges == []


def test_complete_graph_weights_match_independent_norms():
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(40, 3))
    g = build_complete_graph(pts)
    assert len(g.edges) == 40 * 39 // 2
    for i, j, w in g.edges:
        assert w == pytest.approx(float(np.linalg.norm(pts[i] - pts[j])), rel=1e-12)


def test_complete_graph_rejects_empty():
    with pytest.raises(UsageError):
        build_complete_graph(np.empty((0, 2)))


# -------------------------------------------------------------------- EMST

def test_emst_collinear_drops_longest_edge():
    tree = compute_emst(build_complete_graph(np.array([[0.0], [1.0], [3.0]])))
    assert tree.edges == [(0, 1, 1.0), (1, 2, 2.0)]


def test_emst_unit_square_ties_break_lexicographically():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    tree = compute_emst(build_complete_graph(pts))
    assert [(i, j) for i, j, _ in tree.edges] == [(0, 1), (0, 3), (1, 2)]
    assert sum(w for _, _, w in tree.edges) == pytest.approx(3.0)
    assert min_spanning_weight_exhaustive(pts) == pytest.approx(3.0)


def test_emst_weight_matches_exhaustive_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(10):
        pts = random_cloud(rng, n=int(rng.integers(2, 7)), p=2)
        tree = compute_emst(build_complete_graph(pts))
        got = sum(w for _, _, w in tree.edges)
        assert got == pytest.approx(min_spanning_weight_exhaustive(pts), rel=1e-12)


def test_emst_empty_graph_rejected():
    with pytest.raises(UsageError):
        compute_emst(WeightedGraph(0, []))


def test_emst_disconnected_rejected():
    with pytest.raises(UsageError):
        compute_emst(WeightedGraph(3, [(0, 1, 1.0)]))


def test_emst_duplicate_points_zero_weight_edges():
    tree = compute_emst(build_complete_graph(np.array([[1.0, 1.0], [1.0, 1.0], [2.0, 1.0]])))
    weights = sorted(w for _, _, w in tree.edges)
    assert weights == [0.0, 1.0]


# -------------------------------------------------------------- ball radii

def test_ball_radii_collinear():
    tree = compute_emst(build_complete_graph(np.array([[0.0], [1.0], [3.0]])))
    assert ball_radii(tree).tolist() == [1.0, 2.0, 2.0]


def test_ball_radii_two_points():
    tree = compute_emst(build_complete_graph(np.array([[0.0], [5.0]])))
    assert ball_radii(tree).tolist() == [5.0, 5.0]


def test_ball_radii_single_vertex_rejected():
    from curvemedian import SpanningTree

    with pytest.raises(UsageError):
        ball_radii(SpanningTree(1, []))


def test_ball_radii_equal_max_incident_weight():
    rng = np.random.default_rng(5)
    pts = random_cloud(rng, n=20, p=3)
    tree = compute_emst(build_complete_graph(pts))
    radii = ball_radii(tree)
    for v in range(20):
        incident = [w for i, j, w in tree.edges if v in (i, j)]
        assert radii[v] == max(incident)


# ---------------------------------------------------------- coverage graph

def test_coverage_graph_collinear_long_chord_admitted():
    pts = np.array([[0.0], [1.0], [3.0]])
    tree = compute_emst(build_complete_graph(pts))
    g = build_coverage_graph(pts, ball_radii(tree), tree=tree)
    assert [(i, j) for i, j, _ in g.edges] == [(0, 1), (0, 2), (1, 2)]


def test_coverage_graph_collinear_far_point_still_admitted():
    pts = np.array([[0.0], [1.0], [10.0]])
    tree = compute_emst(build_complete_graph(pts))
    g = build_coverage_graph(pts, ball_radii(tree), tree=tree)
    assert [(i, j) for i, j, _ in g.edges] == [(0, 1), (0, 2), (1, 2)]


def test_coverage_graph_contains_tree_without_tree_hint():
    # tree edges pass the coverage test on their own merits too
    rng = np.random.default_rng(23)
    pts = random_cloud(rng, n=25, p=2)
    tree = compute_emst(build_complete_graph(pts))
    g = build_coverage_graph(pts, ball_radii(tree), tree=None)
    edge_set = {(i, j) for i, j, _ in g.edges}
    for i, j, _ in tree.edges:
        assert (i, j) in edge_set


def test_tree_edges_covered_by_their_two_endpoint_balls():
    rng = np.random.default_rng(29)
    for _ in range(5):
        pts = random_cloud(rng)
        tree = compute_emst(build_complete_graph(pts))
        radii = ball_radii(tree)
        for i, j, _ in tree.edges:
            balls = [Ball(pts[i], radii[i]), Ball(pts[j], radii[j])]
            assert segment_covered(pts[i], pts[j], balls) is True


def test_coverage_graph_edge_count_between_tree_and_complete():
    cloud = generate_sim1(Sim1Config(n=30, seed=4))
    res = geodesic_pipeline(cloud)
    n_tree, n_graph = len(res.tree.edges), len(res.graph.edges)
    assert n_tree == 29
    assert n_tree <= n_graph <= 30 * 29 // 2


def test_coverage_graph_prune_flag_changes_nothing():
    # the prune threshold exceeds any possible segment length, so the flag
    # can only skip work, never edges
    rng = np.random.default_rng(31)
    pts = random_cloud(rng, n=18, p=2)
    tree = compute_emst(build_complete_graph(pts))
    radii = ball_radii(tree)
    assert build_coverage_graph(pts, radii, tree=tree, prune=True) == build_coverage_graph(
        pts, radii, tree=tree, prune=False
    )


def test_coverage_graph_radii_length_checked():
    with pytest.raises(UsageError):
        build_coverage_graph(np.array([[0.0], [1.0]]), np.array([1.0]))


# ------------------------------------------------------------ shortest paths

def test_shortest_paths_collinear_matrix():
    pts = np.array([[0.0], [1.0], [3.0]])
    res = geodesic_pipeline(pts)
    assert res.distances.tolist() == [[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]]


def test_shortest_paths_route_through_middle():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    dm = shortest_path_distances(g)
    assert dm[0, 2] == 3.0


def test_shortest_paths_prefer_direct_edge():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 2.5)])
    assert shortest_path_distances(g)[0, 2] == 2.5


def test_shortest_paths_zero_weight_edges_connect():
    g = WeightedGraph(3, [(0, 1, 0.0), (1, 2, 1.0)])
    dm = shortest_path_distances(g)
    assert dm[0, 1] == 0.0 and dm[0, 2] == 1.0


def test_shortest_paths_disconnected_names_components():
    g = WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(UsageError, match=r"\[0, 1\].*\[2, 3\]"):
        shortest_path_distances(g)


def test_shortest_paths_match_cubic_oracle():
    rng = np.random.default_rng(17)
    for _ in range(10):
        n = int(rng.integers(2, 30))
        edges = [(i - 1 if i == 1 else int(rng.integers(0, i)), i, float(rng.uniform(0.1, 2.0))) for i in range(1, n)]
        edges = [(min(i, j), max(i, j), w) for i, j, w in edges]
        extra = int(rng.integers(0, n))
        for _ in range(extra):
            i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
            edges.append((int(i), int(j), float(rng.uniform(0.1, 2.0))))
        g = WeightedGraph(n, edges)
        dm = shortest_path_distances(g)
        want = floyd_warshall(n, edges)
        assert np.allclose(dm, want, rtol=1e-9, atol=0.0)


def test_shortest_path_record():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 10.0)])
    rec = shortest_path(g, 0, 2)
    assert rec.vertices == [0, 1, 2]
    assert rec.length == 3.0


def test_shortest_paths_workers_agree():
    rng = np.random.default_rng(41)
    pts = random_cloud(rng, n=30, p=2)
    res = geodesic_pipeline(pts)
    assert np.array_equal(shortest_path_distances(res.graph, workers=4), res.distances)


# ---------------------------------------------------------------- pipeline

def test_pipeline_two_points_distance_is_euclidean():
    res = geodesic_pipeline(np.array([[0.0, 0.0], [3.0, 4.0]]))
    assert res.distances[0, 1] == 5.0


def test_pipeline_single_point():
    res = geodesic_pipeline(np.array([[7.0, 7.0]]))
    assert res.tree.edges == [] and res.graph.edges == []
    assert res.distances.tolist() == [[0.0]]


def test_pipeline_duplicate_points_yield_zero_distances():
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    res = geodesic_pipeline(pts)
    assert res.distances[0, 1] == 0.0
    assert np.isfinite(res.distances).all()


def test_pipeline_deterministic_bit_for_bit():
    rng = np.random.default_rng(13)
    pts = random_cloud(rng, n=24, p=3)
    r1 = geodesic_pipeline(pts)
    r2 = geodesic_pipeline(pts.copy())
    assert r1.tree.edges == r2.tree.edges
    assert r1.graph.edges == r2.graph.edges
    assert np.array_equal(r1.distances, r2.distances)


def test_pipeline_sandwich_bounds():
    rng = np.random.default_rng(19)
    pts = random_cloud(rng, n=30, p=3)
    res = geodesic_pipeline(pts)
    complete = build_complete_graph(pts)
    euclid = np.zeros_like(res.distances)
    for i, j, w in complete.edges:
        euclid[i, j] = euclid[j, i] = w
    tree_paths = shortest_path_distances(
        WeightedGraph(res.tree.n, list(res.tree.edges))
    )
    scale = tree_paths.max()
    assert (res.distances >= euclid - 1e-9 * scale).all()
    assert (res.distances <= tree_paths + 1e-9 * scale).all()


def test_pipeline_removing_chords_never_shrinks_distances():
    rng = np.random.default_rng(37)
    pts = random_cloud(rng, n=15, p=2)
    res = geodesic_pipeline(pts)
    tree_set = {(i, j) for i, j, _ in res.tree.edges}
    non_tree = [e for e in res.graph.edges if (e[0], e[1]) not in tree_set]
    for removed in non_tree:
        pruned = [e for e in res.graph.edges if e != removed]
        dm = shortest_path_distances(WeightedGraph(res.graph.n, pruned))
        assert (dm >= res.distances - 1e-12).all()


def test_pipeline_parabola_keeps_every_point_connected():
    for n in (10, 30, 100):
        cloud = generate_sim1(Sim1Config(n=n, seed=2))
        res = geodesic_pipeline(cloud)
        assert np.isfinite(res.distances).all()
        touched = set()
        for i, j, _ in res.graph.edges:
            touched.update((i, j))
        assert touched == set(range(n))


def test_cloud_diameter_matches_complete_graph_max():
    rng = np.random.default_rng(43)
    pts = random_cloud(rng, n=20, p=4)
    complete = build_complete_graph(pts)
    assert cloud_diameter(pts) == max(w for _, _, w in complete.edges)
