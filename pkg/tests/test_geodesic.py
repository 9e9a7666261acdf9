import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from palette_diagram.data import from_rows
from palette_diagram.errors import (
    BadKError,
    DegenerateDistancesError,
    DisconnectedError,
    GraphRepairWarning,
)
from palette_diagram.geodesic import (
    NeighborGraph,
    all_pairs_geodesic,
    build_knn_graph,
    ensure_connected,
    geodesic_distances,
    pairwise_distances,
    rescale_distances,
)
from tests.helpers import floyd_warshall, random_connected_edges


def brute_pairwise(x):
    n = len(x)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = sum((a - b) ** 2 for a, b in zip(x[i], x[j])) ** 0.5
    return out


def test_pairwise_examples():
    d = pairwise_distances(from_rows([[0, 0], [3, 4]]))
    assert d[0, 1] == 5 and d[1, 0] == 5
    assert pairwise_distances(from_rows([[1, 2], [1, 2]]))[0, 1] == 0


def test_pairwise_matches_double_loop():
    rng = np.random.default_rng(3)
    x = rng.random((3, 4))
    np.testing.assert_allclose(pairwise_distances(x), brute_pairwise(x.tolist()), atol=1e-12, rtol=0)


def test_knn_hand_enumerated():
    d = pairwise_distances(np.array([[0.0], [1.0], [10.0]]))
    g = build_knn_graph(d, 1)
    assert [(i, j) for i, j, _ in g.edges] == [(0, 1), (1, 2)]
    assert [w for *_, w in g.edges] == [1.0, 9.0]


def test_knn_full_is_complete():
    d = pairwise_distances(np.random.default_rng(0).random((6, 2)))
    g = build_knn_graph(d, 5)
    assert len(g.edges) == 15


def test_knn_ties_prefer_lower_index():
    # node 1 is equidistant from 0 and 2
    d = pairwise_distances(np.array([[0.0], [1.0], [2.0]]))
    g = build_knn_graph(d, 1)
    assert [(i, j) for i, j, _ in g.edges] == [(0, 1), (1, 2)]
    d = pairwise_distances(np.array([[0.0], [1.0], [2.0], [100.0]]))
    # node 1 picks 0 over 2; node 2 picks 1 over 3
    assert {(i, j) for i, j, _ in build_knn_graph(d, 1).edges} == {(0, 1), (1, 2), (2, 3)}


@pytest.mark.parametrize("k", [0, 3, -1])
def test_knn_bad_k(k):
    d = pairwise_distances(np.zeros((3, 1)))
    with pytest.raises(BadKError):
        build_knn_graph(d, k)


def test_knn_single_point_bad_k():
    with pytest.raises(BadKError):
        build_knn_graph(np.zeros((1, 1)), 1)


def test_ensure_connected_unchanged_when_connected():
    d = pairwise_distances(np.array([[0.0], [1.0], [10.0]]))
    g = build_knn_graph(d, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert ensure_connected(g, d) is g


def test_ensure_connected_bridges_two_clusters():
    pos = np.array([[0.0], [1.0], [10.0], [11.0]])
    d = pairwise_distances(pos)
    g = build_knn_graph(d, 1)
    assert g.n_components() == 2
    # brute-force oracle over all cross-component pairs
    labels = g.component_labels()
    best = min(
        (d[i, j], i, j) for i in range(4) for j in range(i + 1, 4) if labels[i] != labels[j]
    )
    with pytest.warns(GraphRepairWarning):
        fixed = ensure_connected(g, d)
    added = set(fixed.edges) - set(g.edges)
    assert added == {(best[1], best[2], best[0])} == {(1, 2, 9.0)}
    assert fixed.n_components() == 1


def test_ensure_connected_single_node():
    g = NeighborGraph(1, (), 1)
    assert ensure_connected(g, np.zeros((1, 1))) is g


def test_ensure_connected_three_clusters():
    pos = np.array([[0.0], [0.5], [10.0], [10.5], [30.0], [30.5]])
    d = pairwise_distances(pos)
    g = build_knn_graph(d, 1)
    with pytest.warns(GraphRepairWarning):
        fixed = ensure_connected(g, d)
    assert fixed.n_components() == 1
    assert len(fixed.edges) - len(g.edges) == 2
    assert (1, 2, 9.5) in fixed.edges and (3, 4, 19.5) in fixed.edges


def test_geodesic_path_graph():
    g = NeighborGraph(3, ((0, 1, 1.0), (1, 2, 2.0)), 1)
    d = all_pairs_geodesic(g)
    assert d[0, 2] == 3 and d[2, 0] == 3


def test_geodesic_isolated_node():
    g = NeighborGraph(3, ((0, 1, 1.0),), 1)
    with pytest.raises(DisconnectedError):
        all_pairs_geodesic(g)


def test_geodesic_zero_weight_edges_are_edges():
    g = NeighborGraph(3, ((0, 1, 0.0), (1, 2, 0.0)), 1)
    assert all_pairs_geodesic(g).tolist() == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]


def test_geodesic_matches_floyd_warshall():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 30))
        edges = random_connected_edges(rng, n)
        got = all_pairs_geodesic(NeighborGraph(n, tuple(edges), 1))
        np.testing.assert_allclose(got, floyd_warshall(n, edges), atol=1e-12, rtol=0)


def test_rescale_examples():
    d = np.array([[0, 4.0], [4.0, 0]])
    assert rescale_distances(d, 2).tolist() == [[0, 2], [2, 0]]
    d2 = np.array([[0, 2.0], [2.0, 0]])
    assert rescale_distances(d2, 2).tolist() == d2.tolist()
    with pytest.raises(DegenerateDistancesError):
        rescale_distances(np.zeros((3, 3)), 2)


points = st.integers(2, 25).flatmap(
    lambda n: arrays(np.float64, (n, 3), elements=st.floats(0, 100, allow_nan=False))
)


@settings(max_examples=60, deadline=None)
@given(points, st.integers(1, 30))
def test_geodesic_properties(x, k):
    n = len(x)
    k = min(k, n - 1)
    d = pairwise_distances(x)
    g = build_knn_graph(d, k)
    assert np.all(g.degrees() >= min(k, n - 1))
    assert all(i < j for i, j, _ in g.edges)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GraphRepairWarning)
        fixed = ensure_connected(g, d)
    assert fixed.n_components() == 1
    assert (len(fixed.edges) == len(g.edges)) == (g.n_components() == 1)
    geo = all_pairs_geodesic(fixed)
    assert np.array_equal(geo, geo.T)
    assert np.all(np.diag(geo) == 0)
    assert np.all(geo >= d - 1e-9)
    # triangle inequality: D_ij <= D_il + D_lj
    assert np.all(geo[:, None, :] <= geo[:, :, None] + geo[None, :, :] + 1e-9)


@settings(max_examples=60, deadline=None)
@given(points, st.floats(0.1, 10))
def test_rescale_preserves_ratios(x, target):
    d = pairwise_distances(x)
    if d.max() == 0:
        return
    r = rescale_distances(d, target)
    assert abs(r.max() - target) <= 1e-12 * max(1.0, target)
    mask = d > 0
    ratio = r[mask] / d[mask]
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-9)


def test_geodesic_distances_clamps_k():
    d = geodesic_distances(np.array([[0.0], [1.0], [3.0]]), k=10)
    assert d.tolist() == [[0, 1, 3], [1, 0, 2], [3, 2, 0]]
