"""Morphological hierarchical image segmentation.

Edge-weighted pixel graphs, alpha-trees (single-linkage hierarchies of
quasi-flat zones), constrained-connectivity partitions, separation and
transition maps, degree-constrained connectivity, min-trees, and saliency
maps (ultrametric watersheds) with Khalimsky-grid rendering.
"""

from .alphatree import (
    AlphaTree,
    area_filter,
    build_alpha_tree,
    constrained_cc,
    cut_alpha,
    d_alpha,
    d_omega,
    export_dendrogram,
    import_dendrogram,
    omega_cc,
)
from .degree import alpha_degree_map, alpha_n_partition
from .graph import EdgeWeightedGraph, build_pixel_graph, double_graph, line_graph
from .grid import GridImage, ScalarMap
from .mintree import ComponentTree, build_min_tree
from .mst import kruskal_mst
from .partition import Partition, alpha_cc_partition, flat_zones
from .raster import RasterFormatError, read_image, write_raster
from .saliency import (
    KhalimskyImage,
    SaliencyMap,
    WatershedCheck,
    cut_saliency,
    hierarchy_from_saliency,
    is_ultrametric_watershed,
    pass_value,
    range_filter_saliency,
    render_khalimsky,
    saliency_from_tree,
)
from .separation import (
    hmt_greater,
    hmt_lower,
    max_separation_flatzones,
    max_separation_pixels,
    min_separation_flatzones,
    min_separation_pixels,
    regional_maxima,
    regional_minima,
    transition_mask,
)
from .unionfind import UnionFind

__version__ = "0.1.0"

__all__ = [
    "AlphaTree",
    "ComponentTree",
    "EdgeWeightedGraph",
    "GridImage",
    "KhalimskyImage",
    "Partition",
    "RasterFormatError",
    "SaliencyMap",
    "ScalarMap",
    "UnionFind",
    "WatershedCheck",
    "alpha_cc_partition",
    "alpha_degree_map",
    "alpha_n_partition",
    "area_filter",
    "build_alpha_tree",
    "build_min_tree",
    "build_pixel_graph",
    "constrained_cc",
    "cut_alpha",
    "cut_saliency",
    "d_alpha",
    "d_omega",
    "double_graph",
    "export_dendrogram",
    "flat_zones",
    "hierarchy_from_saliency",
    "hmt_greater",
    "hmt_lower",
    "import_dendrogram",
    "is_ultrametric_watershed",
    "kruskal_mst",
    "line_graph",
    "max_separation_flatzones",
    "max_separation_pixels",
    "min_separation_flatzones",
    "min_separation_pixels",
    "omega_cc",
    "pass_value",
    "range_filter_saliency",
    "read_image",
    "regional_maxima",
    "regional_minima",
    "render_khalimsky",
    "saliency_from_tree",
    "transition_mask",
    "write_raster",
]
