"""Saliency maps (ultrametric watersheds) and their round trip with trees.

A saliency map values every edge of a pixel graph with the hierarchy level
at which its endpoints merge, stacking region contours: the longer a contour
persists, the higher its value.  Such a map is an ultrametric watershed:
every edge value is the minimax pass value between its endpoints, and every
minimum plateau sits at 0.  Hierarchies and ultrametric watersheds determine
each other; both directions are implemented here.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from ._core import component_roots, meet_values
from .alphatree import AlphaTree, build_alpha_tree
from .graph import EdgeWeightedGraph
from .partition import Partition

__all__ = [
    "SaliencyMap",
    "KhalimskyImage",
    "WatershedCheck",
    "saliency_from_tree",
    "pass_value",
    "cut_saliency",
    "hierarchy_from_saliency",
    "is_ultrametric_watershed",
    "range_filter_saliency",
    "render_khalimsky",
]


class SaliencyMap:
    """Per-edge nonnegative values over a pixel adjacency graph."""

    __slots__ = ("graph", "values")

    def __init__(self, graph: EdgeWeightedGraph, values):
        arr = np.asarray(values, dtype=np.int64).ravel()
        if arr.shape[0] != graph.edge_count:
            raise ValueError("one value per edge required")
        if arr.size and arr.min() < 0:
            raise ValueError("saliency values must be nonnegative")
        arr = arr.copy() if arr.flags.writeable else arr
        arr.flags.writeable = False
        self.graph = graph
        self.values = arr

    def __eq__(self, other) -> bool:
        if not isinstance(other, SaliencyMap):
            return NotImplemented
        same_graph = self.graph is other.graph or (
            self.graph.vertex_count == other.graph.vertex_count
            and bool(np.array_equal(self.graph.eu, other.graph.eu))
            and bool(np.array_equal(self.graph.ev, other.graph.ev))
        )
        return same_graph and bool(np.array_equal(self.values, other.values))

    def __repr__(self) -> str:
        return f"SaliencyMap({self.graph.edge_count} edges, max {int(self.values.max()) if self.values.size else 0})"


@dataclass(frozen=True)
class WatershedCheck:
    """Outcome of the ultrametric-watershed test; falsy when a violation
    was found, with the offending edge and reason attached."""

    ok: bool
    edge: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def saliency_from_tree(tree: AlphaTree, graph: EdgeWeightedGraph) -> SaliencyMap:
    """Value every graph edge with the merge level of its endpoints.

    Edges interior to a flat zone share a leaf and get 0.
    """
    if tree.leaf_of_pixel is None:
        raise ValueError("tree has no pixel map (imported from a document)")
    if tree.pixel_count != graph.vertex_count:
        raise ValueError("tree and graph disagree on the pixel count")
    la = tree.leaf_of_pixel[graph.eu]
    lb = tree.leaf_of_pixel[graph.ev]
    vals = meet_values(tree.parent, tree.alpha, la, lb)
    # pixels of one flat zone are never separated, even in filtered trees
    # where the zone's entry point moved up
    vals[tree.base_label[graph.eu] == tree.base_label[graph.ev]] = 0
    return SaliencyMap(graph, vals)


def _edge_values(obj) -> tuple[EdgeWeightedGraph, np.ndarray]:
    if isinstance(obj, SaliencyMap):
        return obj.graph, obj.values
    if isinstance(obj, EdgeWeightedGraph):
        return obj, obj.ew
    raise TypeError("expected a SaliencyMap or EdgeWeightedGraph")


def pass_value(obj, p: int, q: int) -> int:
    """Minimax path value between two vertices: the minimum over all paths
    of the largest edge value along the path.

    Dijkstra-style search with the max-composition; independent of any tree.
    """
    graph, vals = _edge_values(obj)
    n = graph.vertex_count
    if not (0 <= p < n and 0 <= q < n):
        raise IndexError("vertex id out of range")
    if p == q:
        return 0
    adj = graph.adjacency()
    best = [None] * n
    heap = [(0, p)]
    while heap:
        d, v = heapq.heappop(heap)
        if best[v] is not None:
            continue
        best[v] = d
        if v == q:
            return int(d)
        for u, ei in adj[v]:
            if best[u] is None:
                heapq.heappush(heap, (max(d, int(vals[ei])), u))
    raise ValueError("vertices are not connected")


def cut_saliency(smap: SaliencyMap, lam: int) -> Partition:
    """Components of the edges valued <= lam; nested over lam."""
    lam = int(lam)
    if lam < 0:
        raise ValueError("threshold must be nonnegative")
    keep = smap.values <= lam
    g = smap.graph
    roots = component_roots(g.vertex_count, g.eu[keep], g.ev[keep])
    return Partition(roots)


def hierarchy_from_saliency(smap: SaliencyMap) -> AlphaTree:
    """Alpha-tree of the edge map (its quasi-flat-zone hierarchy).

    When the map is an ultrametric watershed this inverts saliency_from_tree
    exactly; for an arbitrary edge map it builds the subdominant hierarchy.
    """
    g = smap.graph
    weighted = EdgeWeightedGraph(
        g.vertex_count,
        (g.eu, g.ev, smap.values),
        vertex_weights=g.vertex_weights,
        _validate=False,
    )
    return build_alpha_tree(weighted)


def is_ultrametric_watershed(smap: SaliencyMap) -> WatershedCheck:
    """Check the two watershed conditions on an edge map.

    (a) every edge value equals the minimax pass value of its endpoints,
        i.e. the map is the saliency of its own hierarchy;
    (b) every minimum plateau (connected constant-value edge set with no
        strictly lower incident edge) is valued 0.
    """
    tree = hierarchy_from_saliency(smap)
    la = tree.leaf_of_pixel[smap.graph.eu]
    lb = tree.leaf_of_pixel[smap.graph.ev]
    merge = meet_values(tree.parent, tree.alpha, la, lb)
    bad = np.flatnonzero(merge != smap.values)
    if bad.size:
        e = int(bad[0])
        return WatershedCheck(
            False, e, f"edge {e} valued {int(smap.values[e])} but pass value is {int(merge[e])}"
        )

    g = smap.graph
    vals = smap.values
    inc = g.incidence()
    seen = np.zeros(g.edge_count, dtype=bool)
    for start in range(g.edge_count):
        if seen[start] or vals[start] == 0:
            continue
        v = int(vals[start])
        stack = [start]
        seen[start] = True
        plateau = [start]
        is_min = True
        while stack:
            e = stack.pop()
            for vx in (int(g.eu[e]), int(g.ev[e])):
                for e2 in inc[vx]:
                    w2 = int(vals[e2])
                    if w2 < v:
                        is_min = False
                    elif w2 == v and not seen[e2]:
                        seen[e2] = True
                        stack.append(e2)
                        plateau.append(e2)
        if is_min:
            e = min(plateau)
            return WatershedCheck(
                False, e, f"minimum plateau at value {v} (edge {e}) is not 0"
            )
    return WatershedCheck(True)


def range_filter_saliency(smap: SaliencyMap, vertex_weights=None, omega: int | None = None) -> SaliencyMap:
    """Flood the map with the intensity range of its hierarchy: each edge
    gets the smallest range bound under which its endpoints share a
    component.

    The cut of the result at any threshold w is exactly the range-constrained
    partition at w; the optional omega argument only validates the intended
    display threshold (the flooded values themselves do not depend on it).
    """
    if omega is not None and int(omega) < 0:
        raise ValueError("omega must be nonnegative")
    g = smap.graph
    vw = g.vertex_weights if vertex_weights is None else np.asarray(vertex_weights, dtype=np.int64).ravel()
    if vw is None:
        raise ValueError("vertex weights are required for range flooding")
    weighted = EdgeWeightedGraph(g.vertex_count, (g.eu, g.ev, smap.values), vertex_weights=vw, _validate=False)
    tree = build_alpha_tree(weighted)
    la = tree.leaf_of_pixel[g.eu]
    lb = tree.leaf_of_pixel[g.ev]
    vals = meet_values(tree.parent, tree.max_value - tree.min_value, la, lb)
    return SaliencyMap(g, vals)


class KhalimskyImage:
    """Doubled raster interleaving pixel sites and inter-pixel contour sites.

    Pixel sites (even, even) are 0, edge sites carry saliency values and
    junction sites (odd, odd) the max of their incident edge sites, so every
    contour draws as a closed curve.
    """

    __slots__ = ("width", "height", "values")

    def __init__(self, width: int, height: int, values):
        arr = np.asarray(values, dtype=np.int64).ravel()
        if arr.shape[0] != width * height:
            raise ValueError("value count does not match dimensions")
        arr = arr.copy() if arr.flags.writeable else arr
        arr.flags.writeable = False
        self.width = int(width)
        self.height = int(height)
        self.values = arr

    def as_array(self) -> np.ndarray:
        return self.values.reshape(self.height, self.width)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KhalimskyImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.values, other.values))
        )


def render_khalimsky(smap: SaliencyMap, width: int, height: int) -> KhalimskyImage:
    """Render an edge map over a (width x height) 4-adjacency grid as a
    (2W-1) x (2H-1) raster."""
    w, h = int(width), int(height)
    g = smap.graph
    if g.vertex_count != w * h:
        raise ValueError("graph does not cover a grid of the given size")
    ux = g.eu % w
    uy = g.eu // w
    horizontal = (g.ev == g.eu + 1) & (ux < w - 1)
    vertical = g.ev == g.eu + w
    if not np.all(horizontal ^ vertical) or g.edge_count != 2 * w * h - w - h:
        raise ValueError("graph is not a 4-adjacency grid for these dimensions")

    kw, kh = 2 * w - 1, 2 * h - 1
    K = np.zeros((kh, kw), dtype=np.int64)
    sy = np.where(horizontal, 2 * uy, 2 * uy + 1)
    sx = np.where(horizontal, 2 * ux + 1, 2 * ux)
    K[sy, sx] = smap.values

    if w > 1 and h > 1:
        vert = K[1::2, 0::2]
        horiz = K[0::2, 1::2]
        K[1::2, 1::2] = np.maximum(
            np.maximum(vert[:, :-1], vert[:, 1:]),
            np.maximum(horiz[:-1, :], horiz[1:, :]),
        )
    return KhalimskyImage(kw, kh, K)
