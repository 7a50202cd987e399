"""Ground truth for the solvers: exact oracle, validator, geometry check and
seeded instance generators.

Nothing here shares code with the sweep engines.  The oracle sees only an
edge list and solves maximum independent set on the square of the line
graph by branch and bound.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .chain import InducedMatching
from .errors import BadSpec, TooLarge, UnknownEdge
from .models import (
    EdgeList,
    PermutationModel,
    TrapezoidModel,
    make_permutation,
    normalize_trapezoids,
    point_model,
)

__all__ = [
    "RNG_ALGORITHM",
    "KINDS",
    "FAMILIES",
    "DEFAULT_ORACLE_CAP",
    "InstanceSpec",
    "OracleResult",
    "ValidationReport",
    "oracle_cap",
    "oracle_mim",
    "validate_induced_matching",
    "diagonal_edges",
    "generate",
]

RNG_ALGORITHM = "numpy-PCG64"
KINDS = ("permutation", "trapezoid")
FAMILIES = ("uniform-random", "identity-plus-k-swaps", "reversal", "separated", "nested")
DEFAULT_ORACLE_CAP = 20
ORACLE_VERTEX_LIMIT = 12


def oracle_cap() -> int:
    """Edge cap for the oracle; MIM_ORACLE_CAP overrides the default."""
    raw = os.environ.get("MIM_ORACLE_CAP")
    return int(raw) if raw else DEFAULT_ORACLE_CAP


# --------------------------------------------------------------------------
# oracle


class OracleResult(NamedTuple):
    size: int
    witness: tuple[tuple[int, int], ...]


def _conflicts(edges: Sequence[tuple[int, int]], adj: list[set[int]]) -> list[int]:
    # bit j of masks[i]: edges i and j cannot both be in an induced matching
    masks = []
    for i, (a, b) in enumerate(edges):
        close = adj[a] | adj[b] | {a, b}
        mask = 0
        for j, (c, d) in enumerate(edges):
            if j != i and (c in close or d in close):
                mask |= 1 << j
        masks.append(mask)
    return masks


def oracle_mim(edges: EdgeList, cap: Optional[int] = None) -> OracleResult:
    """Exact maximum induced matching by exhaustive branch and bound.

    Allowed when m <= cap or n <= 12.
    """
    cap = oracle_cap() if cap is None else cap
    if edges.m > cap and edges.n > ORACLE_VERTEX_LIMIT:
        raise TooLarge(f"m={edges.m} exceeds oracle cap {cap} and n={edges.n} > {ORACLE_VERTEX_LIMIT}")
    elist = [(min(u, v), max(u, v)) for u, v in edges.edges]
    conflict = _conflicts(elist, edges.adjacency())
    best_size = 0
    best_set = 0
    ceiling = edges.n // 2

    def search(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if size + cand.bit_count() <= best_size or best_size == ceiling:
            return
        # branch on the candidate with most conflicts still open
        pick, degree = -1, -1
        rest = cand
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            d = (conflict[i] & cand).bit_count()
            if d > degree:
                pick, degree = i, d
            rest ^= low
        if degree <= 0:
            best_size, best_set = size + cand.bit_count(), chosen | cand
            return
        bit = 1 << pick
        search(cand & ~conflict[pick] & ~bit, chosen | bit, size + 1)
        search(cand & ~bit, chosen, size)

    if elist:
        search((1 << len(elist)) - 1, 0, 0)
    witness = tuple(elist[i] for i in range(len(elist)) if best_set >> i & 1)
    return OracleResult(best_size, witness)


# --------------------------------------------------------------------------
# validation


class ValidationReport(NamedTuple):
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_induced_matching(
    edges: EdgeList,
    candidate: Union[InducedMatching, Iterable[Sequence[int]]],
) -> ValidationReport:
    pairs = candidate.edges if isinstance(candidate, InducedMatching) else [tuple(e) for e in candidate]
    eset = edges.edge_set()
    norm = []
    for u, v in pairs:
        key = (min(u, v), max(u, v))
        if key not in eset:
            raise UnknownEdge(f"{key} is not an edge of the graph")
        norm.append(key)
    problems = []
    for i in range(len(norm)):
        for j in range(i + 1, len(norm)):
            a, b = norm[i], norm[j]
            shared = set(a) & set(b)
            if shared:
                problems.append(f"{a} and {b} share vertex {min(shared)}")
                continue
            for u in a:
                for v in b:
                    if (min(u, v), max(u, v)) in eset:
                        problems.append(f"{a} and {b} are joined by edge {min(u, v)}{max(u, v)}")
    return ValidationReport(not problems, tuple(problems))


# --------------------------------------------------------------------------
# geometry


def _orient(ax: int, ay: int, bx: int, by: int, cx: int, cy: int) -> int:
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def _on_segment(ax: int, ay: int, bx: int, by: int, cx: int, cy: int) -> bool:
    return min(ax, bx) <= cx <= max(ax, bx) and min(ay, by) <= cy <= max(ay, by)


def segments_intersect(p: tuple[int, int, int, int], q: tuple[int, int, int, int]) -> bool:
    """Closed segments (x0, y0)-(x1, y1), exact integer arithmetic."""
    ax, ay, bx, by = p
    cx, cy, dx, dy = q
    o1 = _orient(ax, ay, bx, by, cx, cy)
    o2 = _orient(ax, ay, bx, by, dx, dy)
    o3 = _orient(cx, cy, dx, dy, ax, ay)
    o4 = _orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_segment(ax, ay, bx, by, cx, cy))
        or (o2 == 0 and _on_segment(ax, ay, bx, by, dx, dy))
        or (o3 == 0 and _on_segment(cx, cy, dx, dy, ax, ay))
        or (o4 == 0 and _on_segment(cx, cy, dx, dy, bx, by))
    )


def _diagonals(t: Sequence[int]) -> list[tuple[int, int, int, int]]:
    # bottom line y=0 carries x-corners, top line y=1 carries y-corners
    x1, x2, y1, y2 = t
    return [(x1, 0, y2, 1), (x2, 0, y1, 1)]


def diagonal_edges(raw: Union[TrapezoidModel, Sequence[Sequence[int]]]) -> EdgeList:
    """Intersection graph by testing every pair of diagonals as segments."""
    coords = raw.coords() if isinstance(raw, TrapezoidModel) else [tuple(map(int, t)) for t in raw]
    diag = [_diagonals(t) for t in coords]
    out = []
    for a in range(len(coords)):
        for b in range(a + 1, len(coords)):
            if any(segments_intersect(p, q) for p in diag[a] for q in diag[b]):
                out.append((a + 1, b + 1))
    return EdgeList(len(coords), tuple(out))


# --------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    n: int
    seed: int = 0
    family: str = "uniform-random"
    k: Optional[int] = None

    @classmethod
    def parse(cls, kind: str, n: int, seed: int, family: str) -> "InstanceSpec":
        """Accept ``identity-plus-k-swaps:K`` as shorthand for family plus k."""
        kind = {"perm": "permutation", "trap": "trapezoid"}.get(kind, kind)
        k = None
        if ":" in family:
            family, _, tail = family.partition(":")
            try:
                k = int(tail)
            except ValueError:
                raise BadSpec(f"bad swap count {tail!r}") from None
        return cls(kind, n, seed, family, k)

    @property
    def swaps(self) -> int:
        return self.k if self.k is not None else max(1, self.n // 10)

    def describe(self) -> str:
        fam = f"{self.family}:{self.swaps}" if self.family == "identity-plus-k-swaps" else self.family
        return f"{self.kind}/{fam}/n={self.n}/seed={self.seed}"


def _check(spec: InstanceSpec) -> None:
    if spec.kind not in KINDS:
        raise BadSpec(f"unknown kind {spec.kind!r}")
    if spec.family not in FAMILIES:
        raise BadSpec(f"unknown family {spec.family!r}")
    if not isinstance(spec.n, (int, np.integer)) or spec.n < 1:
        raise BadSpec("n must be a positive integer")
    if not 0 <= spec.seed < 2**64:
        raise BadSpec("seed must fit in 64 bits")
    if spec.family == "identity-plus-k-swaps" and not 0 <= spec.swaps <= spec.n // 2:
        raise BadSpec(f"k={spec.swaps} swaps need n >= {2 * spec.swaps}")


def _permutation(spec: InstanceSpec, rng: np.random.Generator) -> np.ndarray:
    n = spec.n
    ident = np.arange(1, n + 1, dtype=np.int64)
    if spec.family == "uniform-random":
        return rng.permutation(n) + 1
    if spec.family == "identity-plus-k-swaps":
        # disjoint adjacent transpositions: exactly k inversions
        slots = rng.choice(n // 2, size=spec.swaps, replace=False) * 2 if spec.swaps else np.empty(0, np.int64)
        pi = ident.copy()
        pi[slots], pi[slots + 1] = ident[slots + 1], ident[slots]
        return pi
    if spec.family == "reversal":
        return ident[::-1].copy()
    if spec.family == "separated":
        return ident
    # nested: upper half before lower half, a complete bipartite graph
    h = n // 2
    return np.concatenate([ident[h:], ident[:h]])


def _trapezoids(spec: InstanceSpec, rng: np.random.Generator) -> TrapezoidModel:
    n = spec.n
    if spec.family in ("identity-plus-k-swaps", "reversal"):
        return point_model(make_permutation(_permutation(spec, rng)))
    i = np.arange(1, n + 1, dtype=np.int64)
    if spec.family == "separated":
        raw = np.stack([2 * i - 1, 2 * i, 2 * i - 1, 2 * i], axis=1)
    elif spec.family == "nested":
        raw = np.stack([i, 2 * n + 1 - i, i, 2 * n + 1 - i], axis=1)
    else:
        hi = 3 * n
        xs = np.sort(rng.integers(1, hi + 1, size=(n, 2)), axis=1)
        ys = np.sort(rng.integers(1, hi + 1, size=(n, 2)), axis=1)
        raw = np.concatenate([xs, ys], axis=1)
    return normalize_trapezoids(raw)


def generate(spec: InstanceSpec) -> Union[PermutationModel, TrapezoidModel]:
    """Deterministic instance for ``spec`` (same spec, same instance)."""
    _check(spec)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.kind == "permutation":
        return make_permutation(_permutation(spec, rng))
    return _trapezoids(spec, rng)
