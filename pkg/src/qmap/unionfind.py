"""Disjoint-set forest with union by size and path halving."""

from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: dict = {}
        self._size: dict = {}
        self.n_sets = 0
        self._big = 0  # number of sets with >= 2 members
        for x in items:
            self.add(x)

    def __contains__(self, x):
        return x in self._parent

    def __len__(self):
        return len(self._parent)

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1
            self.n_sets += 1

    def find(self, x):
        self.add(x)
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        sa, sb = self._size[ra], self._size[rb]
        if sa < sb:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] = sa + sb
        self.n_sets -= 1
        self._big += 1 - (sa >= 2) - (sb >= 2)
        return True

    def n_sets_at_least(self, k: int) -> int:
        if k == 2:
            return self._big
        return sum(1 for r, n in self._size.items() if self._parent[r] == r and n >= k)

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self._parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())
