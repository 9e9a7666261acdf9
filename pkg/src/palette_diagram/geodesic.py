"""k-nearest-neighbor graphs and geodesic distance matrices."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components, csgraph_from_dense, dijkstra

from .data import DataMatrix
from .errors import (
    BadKError,
    DegenerateDistancesError,
    DimensionMismatchError,
    DisconnectedError,
    GraphRepairWarning,
)

DEFAULT_K = 10
DEFAULT_RESCALE_MAX = 2.0


@dataclass(frozen=True)
class NeighborGraph:
    """Undirected weighted graph stored as a sorted tuple of ``(i, j, w)``, i < j."""

    n_nodes: int
    edges: tuple
    k: int

    def weight_matrix(self) -> np.ndarray:
        """Dense weights with ``inf`` marking absent edges and a zero diagonal."""
        w = np.full((self.n_nodes, self.n_nodes), np.inf)
        np.fill_diagonal(w, 0.0)
        for i, j, weight in self.edges:
            w[i, j] = w[j, i] = weight
        return w

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=int)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def component_labels(self) -> np.ndarray:
        return _components(self)[1]

    def n_components(self) -> int:
        return _components(self)[0]


def _components(g: NeighborGraph):
    if g.n_nodes == 0:
        return 0, np.zeros(0, dtype=int)
    adj = np.zeros((g.n_nodes, g.n_nodes), dtype=bool)
    for i, j, _ in g.edges:
        adj[i, j] = adj[j, i] = True
    return connected_components(adj, directed=False)


def _as_square(d) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise DimensionMismatchError(f"distance matrix must be square, got shape {d.shape}")
    return d


def pairwise_distances(m) -> np.ndarray:
    """Euclidean distances between the rows of ``m`` (a DataMatrix or array)."""
    x = m.values if isinstance(m, DataMatrix) else np.asarray(m, dtype=np.float64)
    diff = x[:, None, :] - x[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # the einsum is symmetric in exact arithmetic; enforce it bitwise
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return d


def build_knn_graph(d, k: int) -> NeighborGraph:
    """Connect every node to its ``k`` nearest neighbors, symmetrized by union.

    Ties at equal distance go to the lower index.
    """
    d = _as_square(d)
    n = d.shape[0]
    if n < 2 or not 1 <= k <= n - 1:
        raise BadKError(f"k must lie in [1, {n - 1}] for {n} points, got {k}")
    pairs = set()
    for i in range(n):
        row = d[i].copy()
        row[i] = np.inf
        for j in np.argsort(row, kind="stable")[:k]:
            j = int(j)
            pairs.add((min(i, j), max(i, j)))
    edges = tuple((i, j, float(d[i, j])) for i, j in sorted(pairs))
    return NeighborGraph(n, edges, k)


def ensure_connected(g: NeighborGraph, d) -> NeighborGraph:
    """Bridge components with the globally shortest cross-component edges.

    Emits a :class:`GraphRepairWarning` when any edge had to be added.
    """
    d = _as_square(d)
    n_comp, labels = _components(g)
    if n_comp <= 1:
        return g
    edges = list(g.edges)
    added = []
    while n_comp > 1:
        cross = labels[:, None] != labels[None, :]
        masked = np.where(cross, d, np.inf)
        # argmin scans row-major, so ties resolve to the lowest (i, j)
        flat = int(np.argmin(masked))
        i, j = divmod(flat, g.n_nodes)
        i, j = min(i, j), max(i, j)
        edges.append((i, j, float(d[i, j])))
        added.append((i, j))
        old, new = labels[j], labels[i]
        labels = np.where(labels == old, new, labels)
        n_comp -= 1
    warnings.warn(
        f"k-NN graph was disconnected; added bridging edges {added}",
        GraphRepairWarning,
        stacklevel=2,
    )
    return NeighborGraph(g.n_nodes, tuple(sorted(edges)), g.k)


def all_pairs_geodesic(g: NeighborGraph) -> np.ndarray:
    """Shortest weighted path length between every pair of nodes."""
    w = g.weight_matrix()
    # inf is the null value, so zero-weight edges survive as real edges
    graph = csgraph_from_dense(w, null_value=np.inf)
    dist = dijkstra(graph, directed=False)
    if not np.all(np.isfinite(dist)):
        i, j = np.argwhere(~np.isfinite(dist))[0]
        raise DisconnectedError(f"no path between nodes {i} and {j}")
    # path sums accumulate in different orders from each end
    dist = np.minimum(dist, dist.T)
    np.fill_diagonal(dist, 0.0)
    return dist


def rescale_distances(d, target_max: float = DEFAULT_RESCALE_MAX) -> np.ndarray:
    """Scale ``d`` so its largest entry equals ``target_max``."""
    d = _as_square(d)
    if not target_max > 0:
        raise ValueError(f"target_max must be positive, got {target_max}")
    top = float(d.max()) if d.size else 0.0
    if top <= 0:
        raise DegenerateDistancesError("all distances are zero; nothing to rescale")
    if top == target_max:
        return d.copy()
    return d * (target_max / top)


def geodesic_distances(m, k: int = DEFAULT_K) -> np.ndarray:
    """Convenience chain: Euclidean distances, k-NN graph (k clamped), repair, shortest paths."""
    d = pairwise_distances(m)
    n = d.shape[0]
    if n == 1:
        return np.zeros((1, 1))
    g = build_knn_graph(d, min(k, n - 1))
    g = ensure_connected(g, d)
    return all_pairs_geodesic(g)
