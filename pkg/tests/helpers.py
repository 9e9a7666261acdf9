"""Independent oracles and parsing utilities shared by the test modules."""

import itertools
import re
import xml.etree.ElementTree as ET

import numpy as np

SVG_NS = "{http://www.w3.org/2000/svg}"
_NUM_PAIR = re.compile(r"(-?\d+\.\d+),(-?\d+\.\d+)")


def floyd_warshall(n, edges):
    """Textbook O(n^3) all-pairs shortest paths over an undirected edge list."""
    dist = [[0.0 if i == j else float("inf") for j in range(n)] for i in range(n)]
    for i, j, w in edges:
        if w < dist[i][j]:
            dist[i][j] = dist[j][i] = w
    for m in range(n):
        row_m = dist[m]
        for i in range(n):
            dim = dist[i][m]
            if dim == float("inf"):
                continue
            row_i = dist[i]
            for j in range(n):
                alt = dim + row_m[j]
                if alt < row_i[j]:
                    row_i[j] = alt
    return np.array(dist)


def random_connected_edges(rng, n, extra_p=0.15):
    """Random spanning tree plus random extra edges, weights uniform in (0, 10)."""
    edges = {}
    perm = rng.permutation(n)
    for a in range(1, n):
        u, v = int(perm[a]), int(perm[rng.integers(0, a)])
        edges[(min(u, v), max(u, v))] = float(rng.uniform(0, 10))
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < extra_p:
            edges[(u, v)] = float(rng.uniform(0, 10))
    return sorted((u, v, w) for (u, v), w in edges.items())


def path_points(d_attr):
    return [(float(x), float(y)) for x, y in _NUM_PAIR.findall(d_attr)]


def parse_svg(text):
    return ET.fromstring(text.encode("utf-8"))


def groups(root, prefix):
    return [g for g in root.iter(SVG_NS + "g") if g.get("id", "").startswith(prefix)]


def cyclic_agreement(order, truth):
    """Fraction of triples whose cyclic orientation matches ``truth``, best over reflection.

    A brute-force circular analogue of Kendall's tau: rotation never changes
    the orientation of a triple, reflection flips all of them.
    """
    pos = np.empty(len(order), dtype=int)
    pos[np.asarray(order)] = np.arange(len(order))
    tpos = np.empty(len(truth), dtype=int)
    tpos[np.asarray(truth)] = np.arange(len(truth))

    def orient(p, a, b, c):
        x, y, z = p[a], p[b], p[c]
        return (x < y) + (y < z) + (z < x) == 2

    same = total = 0
    for a, b, c in itertools.combinations(range(len(order)), 3):
        same += orient(pos, a, b, c) == orient(tpos, a, b, c)
        total += 1
    frac = same / total
    return max(frac, 1 - frac)


def exact_circle_distances(n):
    i = np.arange(n)
    return 1.0 - np.cos(2 * np.pi * (i[:, None] - i[None, :]) / n)
