"""Union-find over {1..N} whose set name is the set minimum.

The sweep engines only ever unite neighbouring values (x-1, x), so naming the
merged set after the set containing the first argument keeps every name equal
to the minimum of its set.  That is what lets ``cal_phi`` jump over a run of
swept cells with a single ``find``.

Path compression plus union by rank is used instead of the Gabow-Tarjan
static-tree structure; the extra inverse-Ackermann factor is invisible at any
practical size.

The ``_find``/``_union``/``_cal_phi`` kernels work on bare arrays.  The
sweep engines call ``_union`` directly but write the phi lookup out by hand,
because a call in their innermost loop was several times slower.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from numba import njit

from .errors import AlreadySameSet, OutOfRange

__all__ = ["MinNameDisjointSet", "cal_phi"]


@njit(cache=True)
def _find(parent, name, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return name[root]


@njit(cache=True)
def _root(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True, inline="always")
def _union(parent, rank, name, x, y):
    """Merge the sets of x and y; the result keeps the name of x's set.

    Returns False (and changes nothing) when x and y already share a set.
    """
    rx = _root(parent, x)
    ry = _root(parent, y)
    if rx == ry:
        return False
    keep = name[rx]
    if rank[rx] < rank[ry]:
        rx, ry = ry, rx
    parent[ry] = rx
    if rank[rx] == rank[ry]:
        rank[rx] += 1
    name[rx] = keep
    return True


@njit(cache=True, inline="always")
def _cal_phi(swept, parent, name, x):
    # greatest c < x with swept[c] == 0, or 0
    if x == 1 or swept[x - 1] == 0:
        return x - 1
    return _find(parent, name, x - 1) - 1


def _fresh(size: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ids = np.arange(size + 1, dtype=np.int64)
    return ids, np.zeros(size + 1, dtype=np.int8), ids.copy()


class MinNameDisjointSet:
    """Disjoint sets over 1..capacity, initially all singletons.

    >>> d = MinNameDisjointSet(8)
    >>> d.union(3, 4)
    >>> d.find(4)
    3
    >>> d.union(2, 3)
    >>> d.find(4)
    2
    """

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self.parent, self.rank, self.name = _fresh(capacity)

    def _check(self, x: int) -> None:
        if not 1 <= x <= self.capacity:
            raise OutOfRange(f"{x} outside 1..{self.capacity}")

    def find(self, x: int) -> int:
        self._check(x)
        return int(_find(self.parent, self.name, x))

    def union(self, x: int, y: int) -> None:
        self._check(x)
        self._check(y)
        if not _union(self.parent, self.rank, self.name, x, y):
            raise AlreadySameSet(f"{x} and {y} are already in one set")

    def same_set(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return _root(self.parent, x) == _root(self.parent, y)

    def __len__(self) -> int:
        return self.capacity

    def __repr__(self) -> str:
        return f"MinNameDisjointSet(capacity={self.capacity})"


def cal_phi(swept: Sequence[bool], d: MinNameDisjointSet, x: int) -> int:
    """Greatest cell index below x whose cell is unswept, 0 if there is none.

    ``swept[i - 1]`` is the flag of cell i.  Runs of swept cells must have
    been merged in ``d`` with adjacent unions for the answer to be right.
    """
    if not 1 <= x <= d.capacity + 1:
        raise OutOfRange(f"{x} outside 1..{d.capacity + 1}")
    flags = np.zeros(d.capacity + 1, dtype=np.int8)
    flags[1:] = np.asarray(swept, dtype=np.int8)[: d.capacity]
    return int(_cal_phi(flags, d.parent, d.name, x))
