"""Component trees of vertex-weighted graphs, min-tree orientation.

Leaves are the regional minima; the parent of a node sits at a strictly
greater level.  Construction is the usual union-find sweep over vertices in
increasing weight order.
"""

from __future__ import annotations

import numpy as np

from ._core import resolve_chains
from .graph import EdgeWeightedGraph
from .unionfind import UnionFind

__all__ = ["ComponentTree", "build_min_tree"]


class ComponentTree:
    """Hierarchy of lower level sets: node levels are vertex weights."""

    __slots__ = ("parent", "level", "area", "min_value", "max_value", "min_vertex", "node_of_vertex", "n_leaves")

    def __init__(self, parent, level, area, min_value, max_value, min_vertex, node_of_vertex, n_leaves):
        self.parent = np.asarray(parent, dtype=np.int64)
        self.level = np.asarray(level, dtype=np.int64)
        self.area = np.asarray(area, dtype=np.int64)
        self.min_value = np.asarray(min_value, dtype=np.int64)
        self.max_value = np.asarray(max_value, dtype=np.int64)
        self.min_vertex = np.asarray(min_vertex, dtype=np.int64)
        self.node_of_vertex = np.asarray(node_of_vertex, dtype=np.int64)
        self.n_leaves = int(n_leaves)

    @property
    def node_count(self) -> int:
        return int(self.parent.shape[0])

    @property
    def root(self) -> int:
        return self.node_count - 1

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.node_count)]
        for j, p in enumerate(self.parent.tolist()):
            if p != -1:
                kids[p].append(j)
        return kids

    def leaves(self) -> list[int]:
        kids = self.children()
        return [j for j in range(self.node_count) if not kids[j]]

    def node_members(self) -> list[np.ndarray]:
        """Sorted vertex ids per node (test-sized graphs only)."""
        sets: list[list[int]] = [[] for _ in range(self.node_count)]
        for v, node in enumerate(self.node_of_vertex.tolist()):
            sets[node].append(v)
        out: list[np.ndarray] = [None] * self.node_count  # type: ignore[list-item]
        kids = self.children()
        for j in range(self.node_count):
            acc = sets[j]
            for c in kids[j]:
                acc = acc + out[c].tolist()
            out[j] = np.sort(np.asarray(acc, dtype=np.int64))
        return out

    def __repr__(self) -> str:
        return f"ComponentTree({self.node_count} nodes, {self.n_leaves} leaves)"


def build_min_tree(graph: EdgeWeightedGraph) -> ComponentTree:
    """Min-tree of a connected vertex-weighted graph.

    Vertices are activated in increasing (weight, id) order and unioned with
    already-active neighbours; the active vertex's node absorbs each merge,
    so plateau chains collapse to one node per connected level set.
    """
    if graph.vertex_weights is None:
        raise ValueError("min-tree needs vertex weights")
    n = graph.vertex_count
    if n == 0:
        raise ValueError("empty graph")
    f = graph.vertex_weights
    order = np.lexsort((np.arange(n), f))

    adj = graph.adjacency()
    uf = UnionFind(n)
    active = np.zeros(n, dtype=bool)
    node_of = np.arange(n, dtype=np.int64)

    # the active vertex's slot always carries the merge, so n slots suffice
    nparent = np.full(n, -1, dtype=np.int64)
    nlevel = f.copy()
    narea = np.ones(n, dtype=np.int64)
    nmin = f.copy()
    nmax = f.copy()
    nminv = np.arange(n, dtype=np.int64)

    merges = 0
    for v in order.tolist():
        active[v] = True
        for u, _ in adj[v]:
            if not active[u]:
                continue
            ru = uf.find(u)
            rv = uf.find(v)
            if ru == rv:
                continue
            na = node_of[ru]
            nb = node_of[rv]
            # the merged set exists at v's level; v's own node carries it
            nparent[na] = nb
            narea[nb] += narea[na]
            if nmin[na] < nmin[nb]:
                nmin[nb] = nmin[na]
            if nmax[na] > nmax[nb]:
                nmax[nb] = nmax[na]
            if nminv[na] < nminv[nb]:
                nminv[nb] = nminv[na]
            uf.union(ru, rv)
            node_of[uf.find(ru)] = nb
            merges += 1
    if merges != n - 1:
        raise ValueError("graph is disconnected")

    surv = resolve_chains(nparent, nlevel, n)
    keep = surv == np.arange(n)
    kept = np.flatnonzero(keep)
    order2 = np.lexsort((nminv[kept], nlevel[kept]))
    kept = kept[order2]
    new_id = np.full(n, -1, dtype=np.int64)
    new_id[kept] = np.arange(kept.shape[0])

    raw_parent = nparent[kept]
    parent = np.where(raw_parent == -1, -1, new_id[surv[raw_parent]])
    node_of_vertex = new_id[surv[np.arange(n)]]

    tree = ComponentTree(
        parent,
        nlevel[kept],
        narea[kept],
        nmin[kept],
        nmax[kept],
        nminv[kept],
        node_of_vertex,
        0,
    )
    tree.n_leaves = len(tree.leaves())
    return tree
