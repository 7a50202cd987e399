"""Permutation and trapezoid models, the match relation and the chain order.

All vertex and trapezoid labels are 1-based.  A :class:`PermutationModel`
stores ``pi`` and ``pi_inv`` as 0-indexed numpy arrays holding 1-based
values, so ``model.pi[a - 1] == pi(a)`` and ``model.pi_inv[v - 1]`` is the
position of ``v`` in ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import InvalidTrapezoid, NotAPermutation, NotNormalized

__all__ = [
    "PermutationModel",
    "Trapezoid",
    "TrapezoidModel",
    "Match",
    "EdgeList",
    "Model",
    "make_permutation",
    "normalize_trapezoids",
    "point_model",
    "is_match",
    "match_less",
    "edges_from_model",
    "vertex_dtype",
    "id_dtype",
]


def vertex_dtype(n: int) -> np.dtype:
    """Narrowest signed integer type able to hold labels ``0..n+1``.

    Dense instances carry one label per match, so halving the width matters
    once m reaches 10**8.
    """
    return np.dtype(np.int16 if n + 2 <= np.iinfo(np.int16).max else np.int32)


def id_dtype(m: int) -> np.dtype:
    return np.dtype(np.int32 if m < np.iinfo(np.int32).max else np.int64)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PermutationModel:
    n: int
    pi: np.ndarray
    pi_inv: np.ndarray

    def position(self, v: int) -> int:
        """pi^-1(v)."""
        return int(self.pi_inv[v - 1])

    def value(self, a: int) -> int:
        """pi(a)."""
        return int(self.pi[a - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationModel):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.pi, other.pi)

    def __repr__(self) -> str:
        if self.n <= 16:
            return f"PermutationModel(pi={tuple(int(v) for v in self.pi)})"
        return f"PermutationModel(n={self.n})"


class Trapezoid(NamedTuple):
    id: int
    x1: int
    x2: int
    y1: int
    y2: int


@dataclass(frozen=True, eq=False)
class TrapezoidModel:
    """n trapezoids as coordinate columns; ``x1[i]`` belongs to trapezoid i+1."""

    n: int
    x1: np.ndarray
    x2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    normalized: bool

    def __getitem__(self, tid: int) -> Trapezoid:
        i = tid - 1
        if not 0 <= i < self.n:
            raise IndexError(tid)
        return Trapezoid(tid, int(self.x1[i]), int(self.x2[i]), int(self.y1[i]), int(self.y2[i]))

    @property
    def trapezoids(self) -> tuple[Trapezoid, ...]:
        return tuple(self[t] for t in range(1, self.n + 1))

    def coords(self) -> list[tuple[int, int, int, int]]:
        return [t[1:] for t in self.trapezoids]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrapezoidModel):
            return NotImplemented
        return (
            self.n == other.n
            and self.normalized == other.normalized
            and all(np.array_equal(getattr(self, c), getattr(other, c)) for c in ("x1", "x2", "y1", "y2"))
        )

    def __repr__(self) -> str:
        if self.n <= 8:
            return f"TrapezoidModel({self.coords()}, normalized={self.normalized})"
        return f"TrapezoidModel(n={self.n}, normalized={self.normalized})"


Model = Union[PermutationModel, TrapezoidModel]


class Match(NamedTuple):
    """One edge of G, oriented so the right end is met first by the sweep."""

    left: int
    right: int


@dataclass(frozen=True)
class EdgeList:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {u}{v} outside 1..{self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v in self.edges}

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


# --------------------------------------------------------------------------
# construction


def make_permutation(values: Iterable[int]) -> PermutationModel:
    pi = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    n = pi.shape[0] if pi.ndim == 1 else 0
    if n == 0:
        raise NotAPermutation("empty permutation")
    if not np.issubdtype(pi.dtype, np.integer):
        raise NotAPermutation(f"non-integer entries ({pi.dtype})")
    pi = pi.astype(np.int64)
    if pi.min() < 1 or pi.max() > n:
        raise NotAPermutation(f"values must lie in 1..{n}")
    pi_inv = np.zeros(n, dtype=np.int64)
    pi_inv[pi - 1] = np.arange(1, n + 1)
    if np.any(pi_inv == 0):
        missing = int(np.flatnonzero(pi_inv == 0)[0]) + 1
        raise NotAPermutation(f"value {missing} missing (duplicates present)")
    return PermutationModel(n, _frozen(pi), _frozen(pi_inv))


def _rank_axis(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # sort key: (value, role lo-before-hi, trapezoid id)
    n = lo.shape[0]
    values = np.concatenate([lo, hi])
    roles = np.repeat([0, 1], n)
    ids = np.tile(np.arange(n), 2)
    order = np.lexsort((ids, roles, values))
    rank = np.empty(2 * n, dtype=np.int64)
    rank[order] = np.arange(1, 2 * n + 1)
    return rank[:n], rank[n:]


def normalize_trapezoids(
    raw: Union[TrapezoidModel, Sequence[Sequence[int]], np.ndarray],
) -> TrapezoidModel:
    """Remap corners to distinct integers 1..2n per axis, keeping their order.

    Equal coordinates are separated by (role, id): a left/bottom corner goes
    before a right/top corner, so touching intervals become overlapping ones
    and the intersection graph is unchanged.
    """
    if isinstance(raw, TrapezoidModel):
        if raw.normalized:
            return raw
        arr = np.stack([raw.x1, raw.x2, raw.y1, raw.y2], axis=1)
    else:
        try:
            arr = np.asarray(raw, dtype=np.int64)
        except (OverflowError, TypeError, ValueError) as exc:
            raise InvalidTrapezoid(f"coordinates must be 64-bit integers: {exc}") from None
    if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] == 0:
        raise InvalidTrapezoid("expected a non-empty sequence of (x1, x2, y1, y2)")
    x1, x2, y1, y2 = (arr[:, c] for c in range(4))
    bad = np.flatnonzero((x1 > x2) | (y1 > y2))
    if bad.size:
        raise InvalidTrapezoid(f"trapezoid {int(bad[0]) + 1} has x1 > x2 or y1 > y2")
    nx1, nx2 = _rank_axis(x1, x2)
    ny1, ny2 = _rank_axis(y1, y2)
    return TrapezoidModel(arr.shape[0], *map(_frozen, (nx1, nx2, ny1, ny2)), normalized=True)


def raw_trapezoids(raw: Sequence[Sequence[int]]) -> TrapezoidModel:
    """Wrap raw coordinates without normalizing them."""
    arr = np.asarray(raw, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] == 0:
        raise InvalidTrapezoid("expected a non-empty sequence of (x1, x2, y1, y2)")
    if np.any((arr[:, 0] > arr[:, 1]) | (arr[:, 2] > arr[:, 3])):
        raise InvalidTrapezoid("x1 > x2 or y1 > y2")
    cols = [_frozen(arr[:, c].copy()) for c in range(4)]
    return TrapezoidModel(arr.shape[0], *cols, normalized=False)


def point_model(model: PermutationModel) -> TrapezoidModel:
    """Degenerate trapezoid model of G(pi): vertex v is the point trapezoid
    spanning x = v on the bottom line and y = pi^-1(v) on the top line."""
    v = np.arange(1, model.n + 1, dtype=np.int64)
    p = np.asarray(model.pi_inv, dtype=np.int64)
    return normalize_trapezoids(np.stack([v, v, p, p], axis=1))


# --------------------------------------------------------------------------
# relations


def is_match(model: Model, a: int, b: int) -> bool:
    """True iff the ordered pair (a, b) is a match of the model."""
    if isinstance(model, PermutationModel):
        return a < b and model.position(a) > model.position(b)
    A, B = model[a], model[b]
    return A.x2 < B.x2 and (A.x2 >= B.x1 or A.y2 >= B.y1)


def match_less(model: Model, e: Match, e2: Match) -> bool:
    """Chain order: e2 lies strictly top-right of e."""
    if isinstance(model, PermutationModel):
        return e[1] < e2[0] and model.position(e[0]) < model.position(e2[1])
    A, B = model[e[0]], model[e[1]]
    C, D = model[e2[0]], model[e2[1]]
    return max(A.x2, B.x2) < min(C.x1, D.x1) and max(A.y2, B.y2) < min(C.y1, D.y1)


def edges_from_model(model: Model) -> EdgeList:
    """Explicit edge list of G(pi) or G(tau); quadratic, for testing and reports."""
    n = model.n
    edges: list[tuple[int, int]] = []
    if isinstance(model, PermutationModel):
        pos = model.pi_inv.tolist()
        for u in range(1, n + 1):
            pu = pos[u - 1]
            for v in range(u + 1, n + 1):
                if pos[v - 1] < pu:
                    edges.append((u, v))
    else:
        if not model.normalized:
            raise NotNormalized("edges_from_model needs a normalized trapezoid model")
        x1, x2, y1, y2 = (c.tolist() for c in (model.x1, model.x2, model.y1, model.y2))
        for a in range(n):
            for b in range(a + 1, n):
                apart = (x2[a] < x1[b] and y2[a] < y1[b]) or (x2[b] < x1[a] and y2[b] < y1[a])
                if not apart:
                    edges.append((a + 1, b + 1))
    return EdgeList(n, tuple(edges))
