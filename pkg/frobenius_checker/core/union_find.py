"""Disjoint-set forest over the integers ``0..n-1``."""

from typing import List, Tuple


class UnionFind:
    """Union by rank with path compression."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def canonical_labels(self) -> Tuple[Tuple[int, ...], int]:
        """
        Label every element by its class, numbering classes by smallest member.

        Returns:
            (label per element, number of classes)
        """
        labels: List[int] = []
        seen = {}
        for x in range(len(self.parent)):
            root = self.find(x)
            if root not in seen:
                seen[root] = len(seen)
            labels.append(seen[root])
        return tuple(labels), len(seen)
