"""Minimum spanning tree by Kruskal's greedy sweep."""

from __future__ import annotations

import numpy as np

from ._core import mst_pick
from .graph import EdgeWeightedGraph

__all__ = ["kruskal_mst"]


def kruskal_mst(graph: EdgeWeightedGraph) -> list[tuple[int, int, int]]:
    """Edges of a minimum spanning tree, in selection order.

    Edges are scanned weight-ascending with a stable tie-break on the
    original edge index, so the returned tree is deterministic even though
    an MST is generally not unique under weight ties.
    """
    n = graph.vertex_count
    if n == 0:
        raise ValueError("empty graph has no spanning tree")
    order = np.argsort(graph.ew, kind="stable")
    pick, taken = mst_pick(n, graph.eu, graph.ev, order)
    if taken != n - 1:
        raise ValueError("graph is disconnected: spanning tree impossible")
    sel = order[pick[order]]
    return [
        (int(graph.eu[i]), int(graph.ev[i]), int(graph.ew[i]))
        for i in sel
    ]
