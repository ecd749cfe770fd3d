"""Graph construction over point clouds and geodesic distance estimation.

Three stages: the complete Euclidean graph on the sample, its minimum
spanning tree, and an augmented graph that additionally keeps every chord
lying inside the union of balls centered at the sample points, each ball's
radius being the longest tree edge incident to its center.  Shortest-path
distances on the augmented graph estimate geodesic distances along the
shape the points were sampled from.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .errors import UsageError
from .geometry import _lambda_intervals, _union_covers, euclidean_distance

__all__ = [
    "WeightedGraph",
    "SpanningTree",
    "PathRecord",
    "GeodesicResult",
    "build_complete_graph",
    "compute_emst",
    "ball_radii",
    "build_coverage_graph",
    "shortest_path_distances",
    "shortest_path",
    "geodesic_pipeline",
    "cloud_diameter",
    "pipeline_diagnostics",
]

Edge = Tuple[int, int, float]

# chunk size for the vectorized chord-coverage pass
_CHUNK = 2048


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph; edges are (i, j, weight) with i < j."""

    n: int
    edges: List[Edge]


@dataclass(frozen=True)
class SpanningTree:
    n: int
    edges: List[Edge]


@dataclass(frozen=True)
class PathRecord:
    source: int
    target: int
    vertices: List[int]
    length: float


class GeodesicResult(NamedTuple):
    tree: SpanningTree
    graph: WeightedGraph
    distances: np.ndarray


def _cloud(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise UsageError("a point cloud must be a nonempty 2-D array (n, p)")
    if not np.all(np.isfinite(pts)):
        raise UsageError("point cloud contains non-finite coordinates")
    return pts


def build_complete_graph(cloud) -> WeightedGraph:
    """Complete graph whose edge weights are pairwise Euclidean distances."""
    pts = _cloud(cloud)
    n = pts.shape[0]
    edges = [
        (i, j, euclidean_distance(pts[i], pts[j]))
        for i in range(n - 1)
        for j in range(i + 1, n)
    ]
    return WeightedGraph(n, edges)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def compute_emst(graph: WeightedGraph) -> SpanningTree:
    """Minimum spanning tree by Kruskal's algorithm.

    Ties are broken deterministically by sorting candidate edges on
    (weight, i, j), so equal-weight inputs always yield the same tree.
    """
    if graph.n < 1:
        raise UsageError("cannot span an empty graph")
    order = sorted(graph.edges, key=lambda e: (e[2], e[0], e[1]))
    uf = _UnionFind(graph.n)
    picked: List[Edge] = []
    for i, j, w in order:
        if uf.union(i, j):
            picked.append((i, j, w))
            if len(picked) == graph.n - 1:
                break
    if len(picked) != graph.n - 1:
        raise UsageError("graph is disconnected; no spanning tree exists")
    return SpanningTree(graph.n, picked)


def ball_radii(tree: SpanningTree) -> np.ndarray:
    """Per-vertex radius: the weight of the longest incident tree edge."""
    if tree.n < 2:
        raise UsageError("ball radii need at least two vertices")
    radii = np.zeros(tree.n)
    for i, j, w in tree.edges:
        if w > radii[i]:
            radii[i] = w
        if w > radii[j]:
            radii[j] = w
    return radii


def cloud_diameter(cloud) -> float:
    """Largest pairwise Euclidean distance in the cloud."""
    pts = _cloud(cloud)
    n = pts.shape[0]
    if n < 2:
        return 0.0
    ii, jj = np.triu_indices(n, 1)
    best = 0.0
    for start in range(0, ii.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        diff = pts[ii[sl]] - pts[jj[sl]]
        best = max(best, float(np.sqrt(np.einsum("bp,bp->b", diff, diff).max())))
    return best


def build_coverage_graph(
    cloud,
    radii,
    tol: Optional[float] = None,
    tree: Optional[SpanningTree] = None,
    prune: bool = False,
) -> WeightedGraph:
    """Graph keeping every chord covered by the union of sample-centered balls.

    A pair (i, j) becomes an edge when the straight segment between the two
    points lies inside the union of all n balls (closed, radius inflated by
    `tol`; `tol` defaults to 1e-9 times the cloud diameter).  Edges of the
    supplied spanning tree are admitted without testing: each one is covered
    by its own endpoint balls by construction.  The optional prune flag
    skips pairs longer than the two largest radii plus the cloud diameter;
    no segment inside the cloud can exceed that bound, so it only ever
    removes work, never edges.
    """
    pts = _cloud(cloud)
    n = pts.shape[0]
    radii = np.asarray(radii, dtype=float)
    if radii.shape != (n,):
        raise UsageError("radii must provide one value per point")
    if (radii < 0).any():
        raise UsageError("radii must be nonnegative")

    tree_weights = {}
    if tree is not None:
        if tree.n != n:
            raise UsageError("tree and cloud disagree on the number of points")
        tree_weights = {(i, j): w for i, j, w in tree.edges}

    ii, jj = np.triu_indices(n, 1)
    seg_len = np.empty(ii.size)
    for start in range(0, ii.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        diff = pts[ii[sl]] - pts[jj[sl]]
        seg_len[sl] = np.sqrt(np.einsum("bp,bp->b", diff, diff))
    diameter = float(seg_len.max()) if seg_len.size else 0.0
    if tol is None:
        tol = 1e-9 * diameter
    if tol < 0.0:
        raise UsageError(f"tolerance must be nonnegative, got {tol}")

    candidate = np.ones(ii.size, dtype=bool)
    for k in range(ii.size):
        if (int(ii[k]), int(jj[k])) in tree_weights:
            candidate[k] = False
    if prune and n >= 2:
        top = np.sort(radii)[-2:]
        candidate &= seg_len <= top.sum() + diameter

    covered = np.zeros(ii.size, dtype=bool)
    idx = np.flatnonzero(candidate)
    for start in range(0, idx.size, _CHUNK):
        sel = idx[start : start + _CHUNK]
        lo, hi, lens = _lambda_intervals(pts[ii[sel]], pts[jj[sel]], pts, radii, tol)
        gap = np.where(lens > 0.0, tol / np.where(lens > 0.0, lens, 1.0), 0.0)
        covered[sel] = _union_covers(lo, hi, gap)

    edges: List[Edge] = []
    for k in range(ii.size):
        i, j = int(ii[k]), int(jj[k])
        if (i, j) in tree_weights:
            edges.append((i, j, tree_weights[(i, j)]))
        elif covered[k]:
            edges.append((i, j, euclidean_distance(pts[i], pts[j])))
    return WeightedGraph(n, edges)


def _adjacency(graph: WeightedGraph):
    adj = [[] for _ in range(graph.n)]
    for i, j, w in graph.edges:
        if not 0 <= i < graph.n and 0 <= j < graph.n:
            raise UsageError(f"edge ({i}, {j}) is out of range")
        adj[i].append((j, w))
        adj[j].append((i, w))
    return adj


def _components(graph: WeightedGraph):
    uf = _UnionFind(graph.n)
    for i, j, _ in graph.edges:
        uf.union(i, j)
    groups = {}
    for v in range(graph.n):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values())


def _sssp(n, adj, source):
    dist = [np.inf] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def shortest_path_distances(graph: WeightedGraph, workers: int = 1) -> np.ndarray:
    """All-pairs shortest-path matrix via one Dijkstra run per source.

    Zero-weight edges (duplicate points) are legitimate.  A disconnected
    graph is refused, naming its components.  The result is symmetrized by
    taking the entrywise minimum of both sweep directions, which removes
    the last-ulp asymmetry of summing the same edge weights in opposite
    orders.
    """
    comps = _components(graph)
    if len(comps) > 1:
        raise UsageError(f"graph is disconnected; components: {comps}")
    n = graph.n
    adj = _adjacency(graph)
    dm = np.empty((n, n))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for s, row in enumerate(pool.map(lambda s: _sssp(n, adj, s), range(n))):
                dm[s] = row
    else:
        for s in range(n):
            dm[s] = _sssp(n, adj, s)
    return np.minimum(dm, dm.T)


def shortest_path(graph: WeightedGraph, source: int, target: int) -> PathRecord:
    """One shortest path with its vertex sequence, for inspection/export."""
    n = graph.n
    if not (0 <= source < n and 0 <= target < n):
        raise UsageError("source/target out of range")
    adj = _adjacency(graph)
    dist = [np.inf] * n
    prev = [-1] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if not np.isfinite(dist[target]):
        raise UsageError(f"no path from {source} to {target}; components: {_components(graph)}")
    vertices = [target]
    while vertices[-1] != source:
        vertices.append(prev[vertices[-1]])
    vertices.reverse()
    return PathRecord(source, target, vertices, float(dist[target]))


def geodesic_pipeline(cloud, tol: Optional[float] = None, workers: int = 1) -> GeodesicResult:
    """Full estimation chain: complete graph, spanning tree, coverage graph,
    then all-pairs shortest-path distances.

    A single point short-circuits to an empty tree and a 1x1 zero matrix.
    """
    pts = _cloud(cloud)
    n = pts.shape[0]
    if n == 1:
        return GeodesicResult(SpanningTree(1, []), WeightedGraph(1, []), np.zeros((1, 1)))
    complete = build_complete_graph(pts)
    tree = compute_emst(complete)
    radii = ball_radii(tree)
    if tol is None:
        tol = 1e-9 * max(w for _, _, w in complete.edges)
    graph = build_coverage_graph(pts, radii, tol=tol, tree=tree)
    distances = shortest_path_distances(graph, workers=workers)
    return GeodesicResult(tree, graph, distances)


def pipeline_diagnostics(cloud, result: GeodesicResult, tol: Optional[float] = None) -> dict:
    """Plain-dict health report for a pipeline run (counts, radii, ratios)."""
    pts = _cloud(cloud)
    n = pts.shape[0]
    diameter = cloud_diameter(pts)
    max_radius = float(ball_radii(result.tree).max()) if n >= 2 else 0.0
    n_tree = len(result.tree.edges)
    n_graph = len(result.graph.edges)
    if tol is None:
        tol = 1e-9 * diameter
    return {
        "n": n,
        "dimension": int(pts.shape[1]),
        "tree_edges": n_tree,
        "graph_edges": n_graph,
        "complete_edges": n * (n - 1) // 2,
        "edge_ratio": (n_graph / n_tree) if n_tree else 1.0,
        "max_radius": max_radius,
        "diameter": diameter,
        "max_radius_over_diameter": (max_radius / diameter) if diameter > 0 else 0.0,
        "tol": float(tol),
    }
