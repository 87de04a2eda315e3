"""Edge-weighted graphs over pixels and the basic graph transforms."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .grid import GridImage

__all__ = ["EdgeWeightedGraph", "build_pixel_graph", "double_graph", "line_graph"]

Dissimilarity = Callable[[int, int], int]


class EdgeWeightedGraph:
    """Undirected graph with nonnegative integer edge weights.

    Edges are kept as parallel arrays (eu, ev, ew) in construction order;
    that order is the tie-break used by every weight-sorted sweep.  Vertex
    weights are optional (pixel intensities when built from an image).
    """

    __slots__ = ("vertex_count", "eu", "ev", "ew", "vertex_weights")

    def __init__(self, vertex_count: int, edges, vertex_weights=None, _validate: bool = True):
        vertex_count = int(vertex_count)
        if vertex_count < 0:
            raise ValueError("vertex count must be nonnegative")
        if isinstance(edges, tuple) and len(edges) == 3:
            eu, ev, ew = (np.asarray(a, dtype=np.int64).ravel() for a in edges)
        else:
            edges = list(edges)
            eu = np.array([e[0] for e in edges], dtype=np.int64)
            ev = np.array([e[1] for e in edges], dtype=np.int64)
            ew = np.array([e[2] for e in edges], dtype=np.int64)
        if not (eu.shape == ev.shape == ew.shape):
            raise ValueError("edge arrays must have equal length")
        if vertex_weights is not None:
            vertex_weights = np.asarray(vertex_weights, dtype=np.int64).ravel()
            if vertex_weights.shape[0] != vertex_count:
                raise ValueError("vertex_weights length must equal vertex count")
            vertex_weights.flags.writeable = False
        if _validate and eu.size:
            if eu.min() < 0 or ev.min() < 0 or max(eu.max(), ev.max()) >= vertex_count:
                raise ValueError("edge endpoint out of range")
            if np.any(eu == ev):
                raise ValueError("self-loops are not allowed")
            if ew.min() < 0:
                raise ValueError("edge weights must be nonnegative")
            lo = np.minimum(eu, ev)
            hi = np.maximum(eu, ev)
            key = lo * np.int64(vertex_count) + hi
            if np.unique(key).shape[0] != key.shape[0]:
                raise ValueError("duplicate edges are not allowed")
        eu.flags.writeable = False
        ev.flags.writeable = False
        ew.flags.writeable = False
        self.vertex_count = vertex_count
        self.eu = eu
        self.ev = ev
        self.ew = ew
        self.vertex_weights = vertex_weights

    @property
    def edge_count(self) -> int:
        return int(self.eu.shape[0])

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as (u, v, weight) tuples in construction order."""
        return list(zip(self.eu.tolist(), self.ev.tolist(), self.ew.tolist()))

    def incidence(self) -> list[list[int]]:
        """Per-vertex list of incident edge indices."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(zip(self.eu.tolist(), self.ev.tolist())):
            inc[u].append(i)
            inc[v].append(i)
        return inc

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbour, edge index)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(zip(self.eu.tolist(), self.ev.tolist())):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return adj

    def __repr__(self) -> str:
        return f"EdgeWeightedGraph({self.vertex_count} vertices, {self.edge_count} edges)"


def build_pixel_graph(image: GridImage, dissimilarity: Dissimilarity | None = None) -> EdgeWeightedGraph:
    """4-adjacency graph of an image, one vertex per pixel.

    Edge weights default to the absolute intensity difference of the two
    pixels.  Edges are enumerated row-major, right edge before down edge,
    which fixes the tie-break order for all weight sorts.
    """
    if not isinstance(image, GridImage):
        raise TypeError("expected a GridImage")
    w, h = image.width, image.height

    p = np.arange(w * h, dtype=np.int64).reshape(h, w)
    xs = np.arange(w)[None, :]
    ys = np.arange(h)[:, None]
    # per pixel: right edge (slot 0) then down edge (slot 1), row-major
    us = np.stack([p, p], axis=-1)
    vs = np.stack([p + 1, p + w], axis=-1)
    valid = np.stack(
        [np.broadcast_to(xs < w - 1, (h, w)), np.broadcast_to(ys < h - 1, (h, w))],
        axis=-1,
    )
    eu = us[valid]
    ev = vs[valid]

    if dissimilarity is None:
        ew = np.abs(image.values[eu] - image.values[ev]) if eu.size else np.empty(0, dtype=np.int64)
    else:
        fu = image.values[eu]
        fv = image.values[ev]
        ew = np.array([int(dissimilarity(int(a), int(b))) for a, b in zip(fu, fv)], dtype=np.int64)
        if ew.size and ew.min() < 0:
            raise ValueError("dissimilarity must be nonnegative")
    return EdgeWeightedGraph(w * h, (eu, ev, ew), vertex_weights=image.values, _validate=False)


def double_graph(graph: EdgeWeightedGraph, dissimilarity: Dissimilarity | None = None) -> EdgeWeightedGraph:
    """Add a twin vertex per vertex, connected to the original by one edge.

    Twin i of vertex i gets id n + i and the same vertex weight, so under the
    default dissimilarity every new edge has weight 0.  Guarantees every flat
    zone of the result contains at least one zero-weight edge.
    """
    if graph.vertex_weights is None:
        raise ValueError("double_graph requires vertex weights")
    n = graph.vertex_count
    f = graph.vertex_weights
    pend_u = np.arange(n, dtype=np.int64)
    pend_v = pend_u + n
    if dissimilarity is None:
        pend_w = np.zeros(n, dtype=np.int64)
    else:
        pend_w = np.array([int(dissimilarity(int(x), int(x))) for x in f], dtype=np.int64)
    eu = np.concatenate([graph.eu, pend_u])
    ev = np.concatenate([graph.ev, pend_v])
    ew = np.concatenate([graph.ew, pend_w])
    weights = np.concatenate([f, f])
    return EdgeWeightedGraph(2 * n, (eu, ev, ew), vertex_weights=weights, _validate=False)


def line_graph(graph: EdgeWeightedGraph) -> EdgeWeightedGraph:
    """Graph whose vertices are the input's edges, adjacent when they share
    an endpoint.  Vertex weights carry the source edge weights; the output's
    own edges are unweighted (stored as weight 0)."""
    m = graph.edge_count
    pairs_u = []
    pairs_v = []
    for inc in graph.incidence():
        k = len(inc)
        for a in range(k):
            for b in range(a + 1, k):
                pairs_u.append(inc[a])
                pairs_v.append(inc[b])
    eu = np.asarray(pairs_u, dtype=np.int64)
    ev = np.asarray(pairs_v, dtype=np.int64)
    ew = np.zeros(eu.shape[0], dtype=np.int64)
    return EdgeWeightedGraph(m, (eu, ev, ew), vertex_weights=graph.ew.copy(), _validate=False)
