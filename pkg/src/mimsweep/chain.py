"""Match lists, f/link tables and MIM reconstruction shared by both graph classes.

Matches are stored in compressed form, grouped by right end: the matches
whose right end is ``x`` occupy ids ``start[x]`` .. ``start[x+1]-1`` and the
id doubles as the index into ``f`` and ``link``.  Ids therefore increase with
the right end, which ``build_mim`` relies on for its tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .models import Match

__all__ = ["MatchLists", "ChainDP", "InducedMatching", "build_mim", "NO_LINK"]

NO_LINK = -1


@dataclass(frozen=True, eq=False)
class MatchLists:
    """``Match(x)``: the left ends y of all matches (y, x), in sweep order."""

    n: int
    start: np.ndarray
    left: np.ndarray
    right: np.ndarray
    work: int = 0

    @property
    def m(self) -> int:
        return int(self.start[self.n + 1])

    def ids(self, x: int) -> range:
        return range(int(self.start[x]), int(self.start[x + 1]))

    def __getitem__(self, x: int) -> list[int]:
        return self.left[self.start[x] : self.start[x + 1]].tolist()

    def match(self, i: int) -> Match:
        return Match(int(self.left[i]), int(self.right[i]))

    def index(self, e: Match) -> int:
        for i in self.ids(e[1]):
            if self.left[i] == e[0]:
                return i
        raise KeyError(e)

    def __iter__(self) -> Iterator[Match]:
        for le, ri in zip(self.left.tolist(), self.right.tolist()):
            yield Match(le, ri)

    def __len__(self) -> int:
        return self.m


@dataclass(frozen=True, eq=False)
class ChainDP:
    """f(e): longest chain with smallest match e; link(e): its next match."""

    matches: MatchLists
    f: np.ndarray
    link: np.ndarray
    algorithm: str
    stats: dict = field(default_factory=dict)

    @property
    def max_f(self) -> int:
        return int(self.f.max()) if self.f.size else 0

    def f_of(self, e: Match) -> int:
        return int(self.f[self.matches.index(e)])

    def link_of(self, e: Match) -> Optional[Match]:
        j = int(self.link[self.matches.index(e)])
        return None if j == NO_LINK else self.matches.match(j)

    def chain_from(self, i: int) -> list[Match]:
        out = []
        while i != NO_LINK:
            out.append(self.matches.match(i))
            i = int(self.link[i])
        return out


@dataclass(frozen=True)
class InducedMatching:
    chain: tuple[Match, ...] = ()

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((min(e), max(e)) for e in self.chain)

    @property
    def size(self) -> int:
        return len(self.chain)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def build_mim(dp: ChainDP) -> InducedMatching:
    """Follow link from the best start match.

    Among maximal-f matches the one with the smallest (right end, left end)
    is taken.
    """
    f = dp.f
    if f.size == 0:
        return InducedMatching()
    best = f.max()
    first = int(np.argmax(f == best))
    ml = dp.matches
    lo, hi = int(ml.start[ml.right[first]]), int(ml.start[ml.right[first] + 1])
    block = np.flatnonzero(f[lo:hi] == best) + lo
    start = int(block[np.argmin(ml.left[block])])
    return InducedMatching(tuple(dp.chain_from(start)))
