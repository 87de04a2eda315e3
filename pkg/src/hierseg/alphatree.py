"""Single-linkage hierarchies of quasi-flat zones (alpha-trees).

An alpha-tree records, bottom-up, how the flat zones of an image merge as
the dissimilarity threshold grows.  Cutting the tree at threshold ``a``
reproduces the partition into components connected by paths whose step
dissimilarity never exceeds ``a``; the merge levels define the subdominant
ultrametric of the underlying edge-weighted graph.

Trees are stored in flat arrays under a canonical numbering:

* leaves come first, ordered by their smallest member pixel;
* internal nodes follow, ordered by (merge level, smallest member pixel);
* a parent's id is strictly greater than all of its children's ids, and its
  merge level strictly greater than theirs (equal-level merge chains are
  collapsed during construction).

The numbering makes cuts and ancestor queries single array sweeps and gives
a unique representation: two trees describe the same hierarchy iff their
arrays are equal.
"""

from __future__ import annotations

import numpy as np

from ._core import highest_qualifying, meet_values, merge_forest, nearest_kept, resolve_chains
from .graph import EdgeWeightedGraph
from .partition import Partition

__all__ = [
    "AlphaTree",
    "build_alpha_tree",
    "cut_alpha",
    "constrained_cc",
    "omega_cc",
    "d_alpha",
    "d_omega",
    "area_filter",
    "export_dendrogram",
    "import_dendrogram",
]


class AlphaTree:
    """Rooted hierarchy of nested components with per-node merge level,
    area and intensity min/max.

    ``leaf_of_pixel`` maps each pixel to the node where it enters the
    hierarchy; it is None for trees rebuilt from exported documents, which
    carry structure only.  ``base_label`` keeps each pixel's original
    flat-zone label: after area filtering, pixels whose leaf was dropped
    wait as that zone until their absorbing ancestor's level is reached.
    """

    __slots__ = ("parent", "alpha", "area", "min_value", "max_value", "min_pixel", "leaf_of_pixel", "base_label", "n_leaves")

    def __init__(self, parent, alpha, area, min_value, max_value, min_pixel, leaf_of_pixel, n_leaves, base_label=None):
        self.parent = _frozen(parent)
        self.alpha = _frozen(alpha)
        self.area = _frozen(area)
        self.min_value = _frozen(min_value)
        self.max_value = _frozen(max_value)
        self.min_pixel = _frozen(min_pixel)
        self.leaf_of_pixel = _frozen(leaf_of_pixel) if leaf_of_pixel is not None else None
        self.base_label = _frozen(base_label) if base_label is not None else None
        self.n_leaves = int(n_leaves)

    @property
    def node_count(self) -> int:
        return int(self.parent.shape[0])

    @property
    def root(self) -> int:
        return self.node_count - 1

    @property
    def pixel_count(self) -> int:
        if self.leaf_of_pixel is None:
            raise ValueError("tree has no pixel map (imported from a document)")
        return int(self.leaf_of_pixel.shape[0])

    def range_of(self, node: int) -> int:
        return int(self.max_value[node] - self.min_value[node])

    @property
    def ranges(self) -> np.ndarray:
        return self.max_value - self.min_value

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.node_count)]
        for j, p in enumerate(self.parent.tolist()):
            if p != -1:
                kids[p].append(j)
        return kids

    def node_pixels(self) -> list[np.ndarray]:
        """Sorted pixel ids per node (test-sized trees only)."""
        sets: list[list[int]] = [[] for _ in range(self.node_count)]
        for p, leaf in enumerate(self.leaf_of_pixel.tolist()):
            sets[leaf].append(p)
        out: list[np.ndarray] = [None] * self.node_count  # type: ignore[list-item]
        kids = self.children()
        for j in range(self.node_count):
            acc = sets[j]
            for c in kids[j]:
                acc = acc + out[c].tolist()
            out[j] = np.sort(np.asarray(acc, dtype=np.int64))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlphaTree):
            return NotImplemented
        if self.n_leaves != other.n_leaves:
            return False
        for a, b in (
            (self.parent, other.parent),
            (self.alpha, other.alpha),
            (self.area, other.area),
            (self.min_value, other.min_value),
            (self.max_value, other.max_value),
            (self.min_pixel, other.min_pixel),
        ):
            if not np.array_equal(a, b):
                return False
        if (self.leaf_of_pixel is None) != (other.leaf_of_pixel is None):
            return False
        if self.leaf_of_pixel is not None:
            return bool(np.array_equal(self.leaf_of_pixel, other.leaf_of_pixel)) and bool(
                np.array_equal(self.base_label, other.base_label)
            )
        return True

    def __repr__(self) -> str:
        return f"AlphaTree({self.node_count} nodes, {self.n_leaves} leaves, root alpha {int(self.alpha[self.root])})"


def _frozen(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    arr = arr.copy() if arr.base is not None or arr.flags.writeable else arr
    arr.flags.writeable = False
    return arr


def build_alpha_tree(graph: EdgeWeightedGraph) -> AlphaTree:
    """Build the alpha-tree of a connected vertex-weighted graph.

    Runs a Kruskal sweep (weight-ascending, stable on edge index), reusing
    the node created at each merge level so plateaus collapse to one node,
    then renumbers canonically.  Quasi-linear in the number of edges.
    """
    if graph.vertex_weights is None:
        raise ValueError("alpha-tree needs vertex weights for range bookkeeping")
    n = graph.vertex_count
    if n == 0:
        raise ValueError("empty graph")
    order = np.argsort(graph.ew, kind="stable")
    nparent, nlevel, narea, nmin, nmax, nminpix, cnt, merges = merge_forest(
        n, graph.eu, graph.ev, graph.ew, order, graph.vertex_weights
    )
    if merges != n - 1:
        raise ValueError("graph is disconnected")
    return _canonical_tree(
        nparent[:cnt], nlevel[:cnt], narea[:cnt], nmin[:cnt], nmax[:cnt], nminpix[:cnt], n
    )


def _canonical_tree(nparent, nlevel, narea, nmin, nmax, nminpix, npixels) -> AlphaTree:
    cnt = nparent.shape[0]
    surv = resolve_chains(nparent, nlevel, cnt)
    keep = surv == np.arange(cnt)
    kept = np.flatnonzero(keep)

    # canonical order: (level, smallest member pixel); leaves are level 0
    key_level = nlevel[kept]
    key_pix = nminpix[kept]
    order = np.lexsort((key_pix, key_level))
    kept = kept[order]

    new_id = np.full(cnt, -1, dtype=np.int64)
    new_id[kept] = np.arange(kept.shape[0])

    raw_parent = nparent[kept]
    parent = np.where(raw_parent == -1, -1, new_id[surv[raw_parent]])
    leaf_of_pixel = new_id[surv[np.arange(npixels)]]
    n_leaves = int(np.count_nonzero(nlevel[kept] == 0))
    min_pixel = nminpix[kept]
    return AlphaTree(
        parent,
        nlevel[kept],
        narea[kept],
        nmin[kept],
        nmax[kept],
        min_pixel,
        leaf_of_pixel,
        n_leaves,
        base_label=min_pixel[leaf_of_pixel],
    )


def _labels_from_best(tree: AlphaTree, best: np.ndarray) -> Partition:
    """Pixel labels given each node's chosen representative.

    Pixels with no qualifying ancestor (-1, possible only after filtering)
    fall back to their original flat zone.
    """
    if tree.leaf_of_pixel is None:
        raise ValueError("tree has no pixel map (imported from a document)")
    chosen = best[tree.leaf_of_pixel]
    labels = np.where(chosen == -1, tree.base_label, tree.min_pixel[chosen])
    return Partition(labels)


def cut_alpha(tree: AlphaTree, alpha: int) -> Partition:
    """Partition at threshold alpha: per pixel, its largest ancestor whose
    merge level does not exceed alpha.  Equals the quasi-flat-zone partition
    of the originating graph at that threshold."""
    alpha = int(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    qualifies = tree.alpha <= alpha
    best = highest_qualifying(tree.parent, qualifies)
    return _labels_from_best(tree, best)


def constrained_cc(tree: AlphaTree, alpha: int, omega: int) -> Partition:
    """Largest ancestors satisfying both the step constraint (merge level
    <= alpha) and the global range constraint (intensity range <= omega).

    Both constraints relax toward the leaves, so the chosen nodes are
    disjoint and the result is a partition.  A pixel with no qualifying
    ancestor (possible only in filtered trees) stays a singleton.
    """
    alpha = int(alpha)
    omega = int(omega)
    if alpha < 0 or omega < 0:
        raise ValueError("alpha and omega must be nonnegative")
    qualifies = (tree.alpha <= alpha) & (tree.ranges <= omega)
    best = highest_qualifying(tree.parent, qualifies)
    return _labels_from_best(tree, best)


def omega_cc(tree: AlphaTree, omega: int) -> Partition:
    """Range-only constrained partition: the step threshold plays no role."""
    return constrained_cc(tree, int(tree.alpha[tree.root]), omega)


def _leaf_pair(tree: AlphaTree, p: int, q: int) -> tuple[int, int]:
    if tree.leaf_of_pixel is None:
        raise ValueError("tree has no pixel map (imported from a document)")
    npix = tree.pixel_count
    if not (0 <= p < npix and 0 <= q < npix):
        raise IndexError("pixel id out of range")
    return int(tree.leaf_of_pixel[p]), int(tree.leaf_of_pixel[q])


def _lca(tree: AlphaTree, a: int, b: int) -> int:
    # ancestors always carry larger ids, so walking the smaller id up meets
    parent = tree.parent
    while a != b:
        if a < b:
            a = int(parent[a])
        else:
            b = int(parent[b])
    return a


def d_alpha(tree: AlphaTree, p: int, q: int) -> int:
    """Merge level of the two pixels' lowest common ancestor (the
    single-linkage ultrametric).  Pixels of one flat zone are at distance 0
    even when filtering moved their zone's entry point up the tree."""
    a, b = _leaf_pair(tree, p, q)
    if tree.base_label[p] == tree.base_label[q]:
        return 0
    return int(tree.alpha[_lca(tree, a, b)])


def d_omega(tree: AlphaTree, p: int, q: int) -> int:
    """Smallest intensity range over components containing both pixels.

    Ranges grow toward the root, so this is the range at the lowest common
    ancestor; it satisfies the ultrametric inequality.
    """
    a, b = _leaf_pair(tree, p, q)
    if tree.base_label[p] == tree.base_label[q]:
        return 0
    return tree.range_of(_lca(tree, a, b))


def area_filter(tree: AlphaTree, min_area: int) -> AlphaTree:
    """Drop every node smaller than min_area; their pixels reattach to the
    nearest surviving ancestor.

    A pixel whose leaf was dropped stays a singleton in cuts below its
    absorber's level and joins the absorber's component from that level on.
    An absorber left with no surviving child becomes a leaf of the filtered
    tree (its level resets to 0).  The root always survives.
    """
    min_area = int(min_area)
    if min_area < 1:
        raise ValueError("min_area must be positive")
    if min_area == 1:
        return tree
    n = tree.node_count
    keep = tree.area >= min_area
    keep[tree.root] = True
    absorber = nearest_kept(tree.parent, keep)

    kept = np.flatnonzero(keep)
    new_id = np.full(n, -1, dtype=np.int64)
    new_id[kept] = np.arange(kept.shape[0])

    raw_parent = tree.parent[kept]
    parent = np.where(raw_parent == -1, -1, new_id[absorber[np.where(raw_parent == -1, 0, raw_parent)]])

    alpha = tree.alpha[kept].copy()
    has_child = np.zeros(kept.shape[0], dtype=bool)
    has_child[parent[parent != -1]] = True
    alpha[~has_child] = 0

    leaf_of_pixel = new_id[absorber[tree.leaf_of_pixel]]

    # renumber: levels changed (childless absorbers reset), so re-sort
    order = np.lexsort((tree.min_pixel[kept], alpha))
    rank = np.empty(kept.shape[0], dtype=np.int64)
    rank[order] = np.arange(kept.shape[0])
    parent2 = np.where(parent == -1, -1, _safe_take(rank, parent))
    return AlphaTree(
        parent2[order],
        alpha[order],
        tree.area[kept][order],
        tree.min_value[kept][order],
        tree.max_value[kept][order],
        tree.min_pixel[kept][order],
        rank[leaf_of_pixel],
        int(np.count_nonzero(alpha == 0)),
        base_label=tree.base_label,
    )


def _safe_take(arr: np.ndarray, idx: np.ndarray) -> np.ndarray:
    out = arr[np.where(idx == -1, 0, idx)]
    return np.where(idx == -1, -1, out)


def export_dendrogram(tree: AlphaTree) -> dict:
    """Nested document {id, alpha, area, min, max, children[]} of the tree.

    Children are listed in ascending id order; the document round-trips
    losslessly through import_dendrogram.
    """
    kids = tree.children()
    docs: list[dict | None] = [None] * tree.node_count
    for j in range(tree.node_count):
        docs[j] = {
            "id": j,
            "alpha": int(tree.alpha[j]),
            "area": int(tree.area[j]),
            "min": int(tree.min_value[j]),
            "max": int(tree.max_value[j]),
            "children": [docs[c] for c in kids[j]],
        }
    return docs[tree.root]  # type: ignore[return-value]


def import_dendrogram(doc: dict) -> AlphaTree:
    """Rebuild a tree from an exported document.

    The result carries structure and node statistics but no pixel map, so
    cuts and distance queries are unavailable on it; exporting it again
    reproduces the document exactly.
    """
    records: list[tuple[int, int, int, int, int, int]] = []

    def walk(node: dict, parent_id: int) -> None:
        stack = [(node, parent_id)]
        while stack:
            d, pid = stack.pop()
            records.append((int(d["id"]), pid, int(d["alpha"]), int(d["area"]), int(d["min"]), int(d["max"])))
            for c in d["children"]:
                stack.append((c, int(d["id"])))

    walk(doc, -1)
    n = len(records)
    ids = sorted(r[0] for r in records)
    if ids != list(range(n)):
        raise ValueError("document node ids are not canonical (0..n-1)")
    parent = np.empty(n, dtype=np.int64)
    alpha = np.empty(n, dtype=np.int64)
    area = np.empty(n, dtype=np.int64)
    vmin = np.empty(n, dtype=np.int64)
    vmax = np.empty(n, dtype=np.int64)
    for i, pid, a, ar, lo, hi in records:
        parent[i] = pid
        alpha[i] = a
        area[i] = ar
        vmin[i] = lo
        vmax[i] = hi
    # min_pixel is not part of the schema; derive a placeholder that keeps
    # the canonical ordering checkable (smallest leaf id below each node)
    min_pixel = np.full(n, -1, dtype=np.int64)
    n_leaves = 0
    has_child = np.zeros(n, dtype=bool)
    has_child[parent[parent != -1]] = True
    for j in range(n):
        if not has_child[j]:
            n_leaves += 1
    return AlphaTree(parent, alpha, area, vmin, vmax, min_pixel, None, n_leaves)
