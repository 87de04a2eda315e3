"""Vertex partitions with canonical labels, flat zones and quasi-flat zones."""

from __future__ import annotations

import numpy as np

from ._core import component_roots
from .graph import EdgeWeightedGraph, build_pixel_graph
from .grid import GridImage

__all__ = ["Partition", "flat_zones", "alpha_cc_partition"]


class Partition:
    """Labelling of vertices into disjoint connected components.

    Labels are canonical: the label of a component is the smallest vertex id
    it contains, so two partitions are equal iff their label arrays are.
    """

    __slots__ = ("labels", "component_count")

    def __init__(self, labels):
        arr = np.asarray(labels, dtype=np.int64).ravel()
        if arr.size == 0:
            raise ValueError("partition of an empty vertex set")
        uniq, first = np.unique(arr, return_index=True)
        # canonical check: every label names its own smallest member
        if not np.array_equal(uniq, first):
            raise ValueError("labels are not canonical (label != smallest member)")
        arr.flags.writeable = False
        self.labels = arr
        self.component_count = int(uniq.shape[0])

    @property
    def vertex_count(self) -> int:
        return int(self.labels.shape[0])

    def members(self) -> dict[int, np.ndarray]:
        """Map label -> sorted member vertex ids."""
        order = np.argsort(self.labels, kind="stable")
        sorted_labels = self.labels[order]
        cuts = np.flatnonzero(np.diff(sorted_labels)) + 1
        groups = np.split(order, cuts)
        return {int(g_lab): np.sort(g) for g_lab, g in zip(sorted_labels[np.r_[0, cuts]], groups)}

    def component_of(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.labels == self.labels[v])

    def refines(self, other: "Partition") -> bool:
        """True if every component of self lies inside one component of other."""
        if self.vertex_count != other.vertex_count:
            raise ValueError("partitions are over different vertex sets")
        # within each self-component, the other-label must be constant;
        # canonical labels make that a single gather
        return bool(np.array_equal(other.labels, other.labels[self.labels]))

    def __eq__(self, o) -> bool:
        if not isinstance(o, Partition):
            return NotImplemented
        return bool(np.array_equal(self.labels, o.labels))

    def __repr__(self) -> str:
        return f"Partition({self.vertex_count} vertices, {self.component_count} components)"


def alpha_cc_partition(graph: EdgeWeightedGraph, alpha: int) -> Partition:
    """Components of the subgraph keeping edges with weight <= alpha.

    Every vertex is alpha-connected to itself, so isolated vertices come out
    as singletons.
    """
    alpha = int(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    keep = graph.ew <= alpha
    roots = component_roots(graph.vertex_count, graph.eu[keep], graph.ev[keep])
    return Partition(roots)


def flat_zones(image: GridImage) -> Partition:
    """Maximal connected iso-intensity components (the alpha=0 partition)."""
    return alpha_cc_partition(build_pixel_graph(image), 0)
