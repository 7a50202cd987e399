"""Plain-text instance and result files.

Permutation:  ``perm <n>`` then one line with pi(1) .. pi(n).
Trapezoid:    ``trap <n>`` then n lines ``x1 x2 y1 y2``.
Result:       the size k, then k lines ``u v`` with u < v in sorted order.
"""

from __future__ import annotations

from typing import Iterable, Union

from .errors import EmptyInstance, InvalidTrapezoid, NotAPermutation, ParseError
from .models import PermutationModel, TrapezoidModel, make_permutation, raw_trapezoids

Model = Union[PermutationModel, TrapezoidModel]

_KINDS = {"perm": "perm", "permutation": "perm", "trap": "trap", "trapezoid": "trap"}


def _ints(tokens: list[str], where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{where}: expected integers, got {' '.join(tokens)!r}") from None


def parse_instance(text: str, kind: str | None = None) -> Model:
    """Parse either file format; ``kind`` ("perm"/"trap") must agree with the header if given."""
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty input")
    head = lines[0]
    if len(head) != 2 or head[0] not in ("perm", "trap"):
        raise ParseError(f"line 1: expected 'perm <n>' or 'trap <n>', got {' '.join(head)!r}")
    tag = head[0]
    if kind is not None and _KINDS.get(kind) != tag:
        raise ParseError(f"file holds a {tag} instance but --kind {kind} was given")
    (n,) = _ints(head[1:], "line 1")
    if n < 0:
        raise ParseError("line 1: negative vertex count")
    if n == 0:
        raise EmptyInstance("instance has no vertices")
    body = lines[1:]
    if tag == "perm":
        if len(body) != 1:
            raise ParseError(f"expected one line of {n} integers after the header, got {len(body)} lines")
        values = _ints(body[0], "line 2")
        if len(values) != n:
            raise ParseError(f"line 2: expected {n} integers, got {len(values)}")
        try:
            return make_permutation(values)
        except NotAPermutation as exc:
            raise ParseError(str(exc)) from exc
    if len(body) != n:
        raise ParseError(f"expected {n} trapezoid lines, got {len(body)}")
    rows = []
    for i, toks in enumerate(body, start=2):
        vals = _ints(toks, f"line {i}")
        if len(vals) != 4:
            raise ParseError(f"line {i}: expected 'x1 x2 y1 y2'")
        rows.append(vals)
    try:
        return raw_trapezoids(rows)
    except InvalidTrapezoid as exc:
        raise ParseError(str(exc)) from exc


def format_instance(model: Model) -> str:
    if isinstance(model, PermutationModel):
        return f"perm {model.n}\n" + " ".join(map(str, model.pi.tolist())) + "\n"
    rows = "".join(f"{x1} {x2} {y1} {y2}\n" for x1, x2, y1, y2 in model.coords())
    return f"trap {model.n}\n" + rows


def format_matching(edges: Iterable[tuple[int, int]]) -> str:
    pairs = sorted((min(u, v), max(u, v)) for u, v in edges)
    return "".join([f"{len(pairs)}\n"] + [f"{u} {v}\n" for u, v in pairs])


def parse_matching(text: str) -> list[tuple[int, int]]:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty result")
    (k,) = _ints(lines[0], "line 1")
    if len(lines) - 1 != k:
        raise ParseError(f"header says {k} edges, found {len(lines) - 1}")
    out = []
    for i, toks in enumerate(lines[1:], start=2):
        u, v = _ints(toks, f"line {i}")
        out.append((u, v))
    return out

