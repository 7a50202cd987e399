"""Maximum induced matching in trapezoid graphs.

Works on a normalized model, where each axis uses every coordinate 1..2n
exactly once.  Every trapezoid has two diagonals, (x1 to y2) and (x2 to y1),
and two trapezoids intersect exactly when some pair of their diagonals
crosses.  The diagonals behave like the points of a permutation on 2n
values, so the same linked-list walk finds every crossing pair.  A pair can
be seen up to four times; a second pass keeps one copy.  The f/link sweep
then runs over x = 2n..1 with one cell per y coordinate.  Right corners
compute f for the matches ending at that trapezoid.  Left corners release
finished chains into the cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .chain import ChainDP, InducedMatching, MatchLists, build_mim
from .dsu import _union
from .errors import AlreadySameSet, ModelCorrupt, NotNormalized
from .models import TrapezoidModel, id_dtype, normalize_trapezoids, vertex_dtype

__all__ = [
    "CornerIndex",
    "RevMatchLists",
    "TrapMatchLists",
    "build_corner_index",
    "build_rev_match_lists",
    "build_all_matches_trap",
    "calculate_f_and_link_trap",
    "mim_trapezoid",
]

_STAT_NAMES = ("cell_visits", "s_updates", "s_flushes", "pushdowns", "phi_calls", "unions")


@dataclass(frozen=True, eq=False)
class CornerIndex:
    """Owner and role (0 = x1/y1, 1 = x2/y2) of every coordinate 1..2n."""

    n: int
    x_owner: np.ndarray
    x_role: np.ndarray
    y_owner: np.ndarray
    y_role: np.ndarray

    def x_corner(self, c: int) -> tuple[int, str]:
        return int(self.x_owner[c]), ("x1", "x2")[self.x_role[c]]

    def y_corner(self, c: int) -> tuple[int, str]:
        return int(self.y_owner[c]), ("y1", "y2")[self.y_role[c]]


def _axis_index(lo: np.ndarray, hi: np.ndarray, axis: str) -> tuple[np.ndarray, np.ndarray]:
    n = lo.shape[0]
    owner = np.zeros(2 * n + 1, dtype=np.int64)
    role = np.zeros(2 * n + 1, dtype=np.int8)
    both = np.concatenate([lo, hi]).astype(np.int64)
    if both.min() < 1 or both.max() > 2 * n or np.bincount(both, minlength=2 * n + 1)[1:].max() != 1:
        raise NotNormalized(f"{axis}-coordinates are not a permutation of 1..{2 * n}")
    ids = np.arange(1, n + 1)
    owner[lo] = ids
    owner[hi] = ids
    role[hi] = 1
    return owner, role


def build_corner_index(model: TrapezoidModel) -> CornerIndex:
    if not model.normalized:
        raise NotNormalized("trapezoid model must be normalized first")
    xo, xr = _axis_index(model.x1, model.x2, "x")
    yo, yr = _axis_index(model.y1, model.y2, "y")
    return CornerIndex(model.n, xo, xr, yo, yr)


@dataclass(frozen=True, eq=False)
class RevMatchLists:
    """revMatch(A): right ends R of matches (A, R), duplicates allowed."""

    n: int
    start: np.ndarray
    data: np.ndarray
    work: int = 0

    def __getitem__(self, a: int) -> list[int]:
        return self.data[self.start[a] : self.start[a + 1]].tolist()

    @property
    def total(self) -> int:
        return int(self.start[self.n + 1])


@dataclass(frozen=True, eq=False)
class TrapMatchLists(MatchLists):
    """Match(A): left ends B of matches (B, A), in decreasing B.y2."""

    rev: RevMatchLists | None = None
    corners: CornerIndex | None = None


@njit(cache=True)
def _rev_walk(n, x2, x_owner, x_role, y_owner, y_role, start, data, fill):
    size = 2 * n
    nxt = np.empty(size + 1, np.int64)
    for i in range(size + 1):
        nxt[i] = i - 1
    nxt[0] = 0
    head = size
    counts = np.zeros(n + 2, np.int64)
    visits = 0
    for y in range(size, 0, -1):
        r = y_owner[y]
        y_top = y_role[y]
        prev = 0
        p = head
        while True:
            if p == 0:
                raise ModelCorrupt("diagonal partner missing from the corner list")
            visits += 1
            a = x_owner[p]
            if a == r:
                # (x1, y2) and (x2, y1) are the two diagonals
                if x_role[p] != y_top:
                    break
            else:
                if x2[a] < x2[r]:
                    owner = a
                    item = r
                else:
                    owner = r
                    item = a
                if fill:
                    data[start[owner] + counts[owner]] = item
                counts[owner] += 1
            prev = p
            p = nxt[p]
        if prev != 0:
            nxt[prev] = nxt[p]
        else:
            head = nxt[p]
    return counts, visits


def build_rev_match_lists(model: TrapezoidModel, corners: CornerIndex | None = None) -> RevMatchLists:
    corners = corners or build_corner_index(model)
    n = model.n
    x2 = np.zeros(n + 1, dtype=np.int64)
    x2[1:] = model.x2
    args = (n, x2, corners.x_owner, corners.x_role, corners.y_owner, corners.y_role)
    vt = vertex_dtype(n)
    counts, visits = _rev_walk(*args, np.zeros(n + 2, np.int64), np.empty(0, vt), False)
    start = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts[1 : n + 1], out=start[2:])
    data = np.empty(int(start[n + 1]), dtype=vt)
    _rev_walk(*args, start, data, True)
    return RevMatchLists(n, start, data, work=int(visits))


@njit(cache=True)
def _dedup(n, y_owner, y_role, rev_start, rev_data, start, left, right, fill):
    # last left end written into Match(B); duplicates of B inside one
    # revMatch(A) are adjacent in time, so one stamp per B is enough
    stamp = np.zeros(n + 1, np.int64)
    counts = np.zeros(n + 2, np.int64)
    scanned = 0
    for y in range(2 * n, 0, -1):
        if y_role[y] == 1:
            a = y_owner[y]
            for k in range(rev_start[a], rev_start[a + 1]):
                b = rev_data[k]
                scanned += 1
                if stamp[b] != a:
                    stamp[b] = a
                    if fill:
                        i = start[b] + counts[b]
                        left[i] = a
                        right[i] = b
                    counts[b] += 1
    return counts, scanned


def build_all_matches_trap(model: TrapezoidModel) -> TrapMatchLists:
    """Deduplicated Match lists of G(tau) in O(m + n)."""
    corners = build_corner_index(model)
    rev = build_rev_match_lists(model, corners)
    n = model.n
    vt = vertex_dtype(n)
    empty = np.empty(0, dtype=vt)
    args = (n, corners.y_owner, corners.y_role, rev.start, rev.data)
    counts, scanned = _dedup(*args, np.zeros(n + 2, np.int64), empty, empty, False)
    start = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts[1 : n + 1], out=start[2:])
    m = int(start[n + 1])
    left = np.empty(m, dtype=vt)
    right = np.empty(m, dtype=vt)
    _dedup(*args, start, left, right, True)
    return TrapMatchLists(n, start, left, right, work=rev.work + int(scanned), rev=rev, corners=corners)


@njit(cache=True)
def _f_link_trap(n, x1, y1, y2, x_owner, x_role, is_top, start, left, right, s_start, f, link, s_ids, stats):
    size = 2 * n
    cell_len = np.zeros(size + 2, f.dtype)
    cell_trace = np.full(size + 2, -1, link.dtype)
    swept = np.zeros(size + 2, np.int8)
    parent = np.arange(size + 1)
    rank = np.zeros(size + 1, np.int8)
    name = np.arange(size + 1)
    visits = 0
    pushes = 0
    flushes = 0
    pushdowns = 0
    phi_calls = 0
    unions = 0

    # only y2 rows can hold chains; every other row starts swept
    for c in range(1, size + 1):
        if is_top[c] == 0:
            swept[c] = 1
            if c > 1 and swept[c - 1] == 1:
                _union(parent, rank, name, c - 1, c)
                unions += 1

    s_fill = s_start.copy()
    for x in range(size, 0, -1):
        a = x_owner[x]
        if x_role[x] == 1:
            # phi inlined, see permutation._f_link_linear
            z = size
            if z > 0 and swept[z] == 1:
                r = z
                while parent[r] != r:
                    r = parent[r]
                while parent[z] != r:
                    w = parent[z]
                    parent[z] = r
                    z = w
                z = name[r] - 1
            phi_calls += 1
            max_len = 0
            trace = -1
            for e in range(start[a], start[a + 1]):
                b = left[e]
                bound = max(y2[a], y2[b])
                while z >= bound:
                    visits += 1
                    if cell_len[z] > max_len:
                        max_len = cell_len[z]
                        trace = cell_trace[z]
                    z = z - 1
                    if z > 0 and swept[z] == 1:
                        r = z
                        while parent[r] != r:
                            r = parent[r]
                        while parent[z] != r:
                            w = parent[z]
                            parent[z] = r
                            z = w
                        z = name[r] - 1
                    phi_calls += 1
                f[e] = max_len + 1
                link[e] = trace
                key = min(x1[a], x1[b])
                s_ids[s_fill[key]] = e
                s_fill[key] += 1
                pushes += 1

            c = y2[a]
            swept[c] = 1
            if c > 1 and swept[c - 1] == 1:
                if not _union(parent, rank, name, c - 1, c):
                    raise AlreadySameSet("sweep tried to merge a row with itself")
                unions += 1
            if c < size and swept[c + 1] == 1:
                if not _union(parent, rank, name, c, c + 1):
                    raise AlreadySameSet("sweep tried to merge a row with itself")
                unions += 1
            z = c - 1
            if z > 0 and swept[z] == 1:
                r = z
                while parent[r] != r:
                    r = parent[r]
                while parent[z] != r:
                    w = parent[z]
                    parent[z] = r
                    z = w
                z = name[r] - 1
            phi_calls += 1
            if z > 0 and cell_len[z] < cell_len[c]:
                cell_len[z] = cell_len[c]
                cell_trace[z] = cell_trace[c]
                pushdowns += 1
        else:
            for k in range(s_start[x], s_start[x + 1]):
                e = s_ids[k]
                q = min(y1[left[e]], y1[right[e]])
                z = q - 1
                if z > 0 and swept[z] == 1:
                    r = z
                    while parent[r] != r:
                        r = parent[r]
                    while parent[z] != r:
                        w = parent[z]
                        parent[z] = r
                        z = w
                    z = name[r] - 1
                phi_calls += 1
                flushes += 1
                if z > 0 and cell_len[z] < f[e]:
                    cell_len[z] = f[e]
                    cell_trace[z] = e
    stats[0] = visits
    stats[1] = pushes
    stats[2] = flushes
    stats[3] = pushdowns
    stats[4] = phi_calls
    stats[5] = unions


def _padded(a: np.ndarray) -> np.ndarray:
    out = np.zeros(a.shape[0] + 1, dtype=np.int64)
    out[1:] = a
    return out


def calculate_f_and_link_trap(model: TrapezoidModel, match_lists: MatchLists) -> ChainDP:
    corners = getattr(match_lists, "corners", None) or build_corner_index(model)
    n, m = model.n, match_lists.m
    x1, y1, y2 = (_padded(c) for c in (model.x1, model.y1, model.y2))
    is_top = np.zeros(2 * n + 2, dtype=np.int8)
    is_top[model.y2] = 1
    # S is keyed by the left-most x1 of each match
    keys = np.minimum(x1[match_lists.left], x1[match_lists.right])
    s_start = np.zeros(2 * n + 2, dtype=np.int64)
    np.cumsum(np.bincount(keys, minlength=2 * n + 1)[1 : 2 * n + 1], out=s_start[2:])
    del keys
    f = np.empty(m, dtype=vertex_dtype(n))
    link = np.empty(m, dtype=id_dtype(m))
    s_ids = np.empty(m, dtype=link.dtype)
    stats = np.zeros(len(_STAT_NAMES), dtype=np.int64)
    _f_link_trap(
        n, x1, y1, y2, corners.x_owner, corners.x_role, is_top,
        match_lists.start, match_lists.left, match_lists.right, s_start, f, link, s_ids, stats,
    )
    del s_ids
    report = dict(zip(_STAT_NAMES, stats.tolist()))
    report["build_work"] = match_lists.work
    report["work"] = match_lists.work + int(stats.sum())
    return ChainDP(match_lists, f, link, "linear", report)


def mim_trapezoid(model: TrapezoidModel) -> InducedMatching:
    model = normalize_trapezoids(model)
    ml = build_all_matches_trap(model)
    return build_mim(calculate_f_and_link_trap(model, ml))
