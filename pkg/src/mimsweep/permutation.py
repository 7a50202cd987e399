"""Maximum induced matching in permutation graphs.

Three steps: enumerate every match (y, x) with a linked list of vertex
labels, compute f and link with a right-to-left sweep over the labels, then
follow link from a best match.  The sweep keeps one cell per row of pi^-1;
the quadratic engine rescans every row above the current left end, while the
linear engine marks rows swept once their vertex has been passed and skips
runs of swept rows through a min-name disjoint set.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .chain import ChainDP, InducedMatching, MatchLists, build_mim
from .dsu import _union
from .errors import AlreadySameSet
from .models import PermutationModel, id_dtype, vertex_dtype

__all__ = [
    "build_all_matches",
    "calculate_f_and_link_quadratic",
    "calculate_f_and_link_linear",
    "mim_permutation",
    "ENGINES",
]

# stats slots filled by the compiled engines
_VISITS, _S_UPDATES, _PUSHDOWNS, _PHI_CALLS, _UNIONS = range(5)
_STAT_NAMES = ("cell_visits", "s_updates", "pushdowns", "phi_calls", "unions")


@njit(cache=True)
def _match_walk(pi, n, start, left, right, fill):
    # Linked list of labels n, n-1, ..., 1.  At step a every node above pi(a)
    # forms a match with pi(a); the walk stops on pi(a) itself, which is
    # then unlinked.
    nxt = np.empty(n + 1, np.int64)
    for i in range(n + 1):
        nxt[i] = i - 1
    nxt[0] = 0
    head = n
    counts = np.zeros(n + 2, np.int64)
    visits = 0
    for a in range(n, 0, -1):
        v = pi[a]
        prev = 0
        p = head
        while p > v:
            if fill:
                k = start[p] + counts[p]
                left[k] = v
                right[k] = p
            counts[p] += 1
            prev = p
            p = nxt[p]
            visits += 1
        visits += 1
        if prev != 0:
            nxt[prev] = nxt[p]
        else:
            head = nxt[p]
    return counts, visits


def _padded(a: np.ndarray) -> np.ndarray:
    out = np.zeros(a.shape[0] + 1, dtype=np.int64)
    out[1:] = a
    return out


def build_all_matches(model: PermutationModel) -> MatchLists:
    """Match lists of G(pi) in O(m + n).

    Each Match(x) comes out in decreasing pi^-1 order.  The walk runs twice,
    first to size the lists and then to fill them.
    """
    n = model.n
    pi = _padded(model.pi)
    vt = vertex_dtype(n)
    empty = np.empty(0, dtype=vt)
    counts, visits = _match_walk(pi, n, np.zeros(n + 2, np.int64), empty, empty, False)
    start = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts[1 : n + 1], out=start[2:])
    m = int(start[n + 1])
    left = np.empty(m, dtype=vt)
    right = np.empty(m, dtype=vt)
    _match_walk(pi, n, start, left, right, True)
    return MatchLists(n, start, left, right, work=int(visits))


@njit(cache=True)
def _f_link_quadratic(n, pos, start, left, right, s_start, f, link, s_ids, stats):
    cell_len = np.zeros(n + 2, f.dtype)
    cell_trace = np.full(n + 2, -1, link.dtype)
    s_fill = s_start.copy()
    visits = 0
    updates = 0
    for x in range(n, 0, -1):
        z = n
        max_len = 0
        trace = -1
        for e in range(start[x], start[x + 1]):
            y = left[e]
            py = pos[y]
            while z > py:
                visits += 1
                if cell_len[z] > max_len:
                    max_len = cell_len[z]
                    trace = cell_trace[z]
                z -= 1
            f[e] = max_len + 1
            link[e] = trace
            s_ids[s_fill[y]] = e
            s_fill[y] += 1
        # S_x is complete: every match (x, a) has a > x
        for k in range(s_start[x], s_start[x + 1]):
            e = s_ids[k]
            r = pos[right[e]]
            updates += 1
            if cell_len[r] < f[e]:
                cell_len[r] = f[e]
                cell_trace[r] = e
    stats[_VISITS] = visits
    stats[_S_UPDATES] = updates


@njit(cache=True)
def _f_link_linear(n, pos, start, left, right, s_start, f, link, s_ids, stats):
    cell_len = np.zeros(n + 2, f.dtype)
    cell_trace = np.full(n + 2, -1, link.dtype)
    swept = np.zeros(n + 2, np.int8)
    parent = np.arange(n + 1)
    rank = np.zeros(n + 1, np.int8)
    name = np.arange(n + 1)
    s_fill = s_start.copy()
    visits = 0
    updates = 0
    pushdowns = 0
    phi_calls = 0
    unions = 0
    for x in range(n, 0, -1):
        # phi(x) = greatest unswept row below x, written out inline in each
        # place: going through a helper call costs about 5x here
        z = n
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
        for e in range(start[x], start[x + 1]):
            y = left[e]
            py = pos[y]
            while z >= py:
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
            s_ids[s_fill[y]] = e
            s_fill[y] += 1

        for k in range(s_start[x], s_start[x + 1]):
            e = s_ids[k]
            b = pos[right[e]] - 1
            if b > 0 and swept[b] == 1:
                r = b
                while parent[r] != r:
                    r = parent[r]
                while parent[b] != r:
                    w = parent[b]
                    parent[b] = r
                    b = w
                b = name[r] - 1
            phi_calls += 1
            updates += 1
            if b > 0 and cell_len[b] < f[e]:
                cell_len[b] = f[e]
                cell_trace[b] = e

        c = pos[x]
        swept[c] = 1
        if c > 1 and swept[c - 1] == 1:
            if not _union(parent, rank, name, c - 1, c):
                raise AlreadySameSet("sweep tried to merge a row with itself")
            unions += 1
        if c < n and swept[c + 1] == 1:
            if not _union(parent, rank, name, c, c + 1):
                raise AlreadySameSet("sweep tried to merge a row with itself")
            unions += 1
        b = c - 1
        if b > 0 and swept[b] == 1:
            r = b
            while parent[r] != r:
                r = parent[r]
            while parent[b] != r:
                w = parent[b]
                parent[b] = r
                b = w
            b = name[r] - 1
        phi_calls += 1
        if b > 0 and cell_len[b] < cell_len[c]:
            cell_len[b] = cell_len[c]
            cell_trace[b] = cell_trace[c]
            pushdowns += 1
    stats[_VISITS] = visits
    stats[_S_UPDATES] = updates
    stats[_PUSHDOWNS] = pushdowns
    stats[_PHI_CALLS] = phi_calls
    stats[_UNIONS] = unions


def _run(kernel, name: str, model: PermutationModel, ml: MatchLists) -> ChainDP:
    n, m = model.n, ml.m
    pos = _padded(model.pi_inv)
    s_start = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(np.bincount(ml.left, minlength=n + 1)[1 : n + 1], out=s_start[2:])
    f = np.empty(m, dtype=vertex_dtype(n))
    link = np.empty(m, dtype=id_dtype(m))
    s_ids = np.empty(m, dtype=link.dtype)
    stats = np.zeros(len(_STAT_NAMES), dtype=np.int64)
    kernel(n, pos, ml.start, ml.left, ml.right, s_start, f, link, s_ids, stats)
    del s_ids
    report = dict(zip(_STAT_NAMES, stats.tolist()))
    report["build_work"] = ml.work
    report["work"] = ml.work + int(stats.sum())
    return ChainDP(ml, f, link, name, report)


def calculate_f_and_link_quadratic(model: PermutationModel, match_lists: MatchLists) -> ChainDP:
    """O(n^2) sweep: one pass of the row pointer per right end."""
    return _run(_f_link_quadratic, "quadratic", model, match_lists)


def calculate_f_and_link_linear(model: PermutationModel, match_lists: MatchLists) -> ChainDP:
    """O(m + n) sweep visiting only unswept rows; every visited row is a match."""
    return _run(_f_link_linear, "linear", model, match_lists)


ENGINES = {
    "quadratic": calculate_f_and_link_quadratic,
    "linear": calculate_f_and_link_linear,
}


def mim_permutation(model: PermutationModel, algorithm: str = "linear") -> InducedMatching:
    try:
        engine = ENGINES[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ENGINES)}") from None
    return build_mim(engine(model, build_all_matches(model)))
