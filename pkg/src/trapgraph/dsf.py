"""Disjoint-set forest with directed (non-ranked) union and path compression.

The union direction is fixed by the caller: ``union(u, v)`` always hangs
``u`` under ``v``.  Traversal code relies on this so that the forest mirrors
the search tree being built and ``find`` answers lowest-common-ancestor
queries.
"""
from __future__ import annotations


class DsfError(ValueError):
    pass


_UNSET = -1


class Dsf:
    """Union-find over the integers ``0..size-1``.

    Elements must be initialized with :meth:`make_set` before use.
    ``find_steps`` accumulates the number of parent links followed by all
    :meth:`find` calls, counted before compression rewires them.
    """

    __slots__ = ("parent", "find_steps")

    def __init__(self, size: int):
        self.parent = [_UNSET] * size
        self.find_steps = 0

    def __len__(self):
        return len(self.parent)

    def make_set(self, v: int) -> None:
        if self.parent[v] != _UNSET:
            raise DsfError(f"element {v} already initialized")
        self.parent[v] = v

    def is_initialized(self, v: int) -> bool:
        return self.parent[v] != _UNSET

    def is_root(self, v: int) -> bool:
        return self.parent[v] == v

    def find(self, v: int) -> int:
        parent = self.parent
        p = parent[v]
        if p == _UNSET:
            raise DsfError(f"element {v} not initialized")
        if p == v:
            return v
        # first pass: locate the root, counting links
        root = v
        steps = 0
        while parent[root] != root:
            root = parent[root]
            steps += 1
        self.find_steps += steps
        # second pass: point everything on the path at the root
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, u: int, v: int) -> None:
        """Make ``v`` the parent of root ``u``."""
        parent = self.parent
        if parent[u] == _UNSET or parent[v] == _UNSET:
            raise DsfError("union on uninitialized element")
        if parent[u] != u:
            raise DsfError(f"element {u} is not a root")
        if parent[v] != v:
            raise DsfError(f"element {v} is not a root")
        if u == v:
            raise DsfError(f"elements {u} and {v} already share a tree")
        parent[u] = v
