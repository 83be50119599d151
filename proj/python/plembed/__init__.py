"""Metric curvature and quasiconformality toolkit for PL embeddings."""

from ._core import (
    DomainError,
    ParseError,
    TopologyError,
    canonical_element,
    cayley_menger,
    comparison_angle,
    convex_face_count_bound,
    dihedral_wedge,
    global_compatibility,
    link_volume,
    mesh_edge_bound,
    polyline_curvature,
    realize_quadruple,
    run_cli,
    s3_embeddability,
    standard_vertex_map,
    uniform_index_bound,
    vertex_excess,
    wald_curvature,
)

__version__ = "0.3.0"

__all__ = [
    "DomainError",
    "ParseError",
    "TopologyError",
    "canonical_element",
    "cayley_menger",
    "comparison_angle",
    "convex_face_count_bound",
    "dihedral_wedge",
    "global_compatibility",
    "link_volume",
    "mesh_edge_bound",
    "polyline_curvature",
    "realize_quadruple",
    "run_cli",
    "s3_embeddability",
    "standard_vertex_map",
    "uniform_index_bound",
    "vertex_excess",
    "wald_curvature",
]
