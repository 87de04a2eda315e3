"""Disjoint-set forest over integer ids, deterministic."""

from __future__ import annotations

__all__ = ["UnionFind"]


class UnionFind:
    """Union-find with path halving and union by size.

    Single-owner: instances are not safe to share across threads.
    """

    __slots__ = ("parent", "size", "components")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("element count must be nonnegative")
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False if already together."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # size tie broken toward the smaller root: keeps runs reproducible
        if self.size[ra] < self.size[rb] or (self.size[ra] == self.size[rb] and rb < ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True

    def together(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def __len__(self) -> int:
        return len(self.parent)
