"""Palette diagrams for large collections of categorical data."""

from .data import DataMatrix, load, normalize_rows, parse_csv, parse_json, to_json
from .embedding import (
    AngularEmbedding,
    LinearOrdering,
    SgdParams,
    angular_distance,
    circular_order,
    isomap_ordering,
    optimize_angles,
    stress,
    stress_gradient,
)
from .geodesic import (
    NeighborGraph,
    all_pairs_geodesic,
    build_knn_graph,
    ensure_connected,
    geodesic_distances,
    pairwise_distances,
    rescale_distances,
)
from .render import (
    DiagramStyle,
    SvgDocument,
    assign_colors,
    layer_order,
    map_categories,
    render_circular,
    render_linear,
)

__all__ = [
    "AngularEmbedding", "DataMatrix", "DiagramStyle", "LinearOrdering", "NeighborGraph",
    "SgdParams", "SvgDocument", "all_pairs_geodesic", "angular_distance", "assign_colors",
    "build_knn_graph", "circular_order", "ensure_connected", "geodesic_distances", "isomap_ordering",
    "layer_order", "load", "map_categories", "normalize_rows", "optimize_angles",
    "pairwise_distances", "parse_csv", "parse_json", "render_circular", "render_linear",
    "rescale_distances", "stress", "stress_gradient", "to_json",
]
