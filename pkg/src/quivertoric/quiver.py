"""Quivers with the identity dimension vector: representation, validation, weights, I/O.

A quiver is stored as an ordered vertex list plus an ordered list of arrow
bundles ``(src, dst, mult)``.  Individual arrows are addressed by
:class:`ArrowIndex` ``(bundle, copy)``; the flattening order (bundle order,
then copy order) fixes the row order of every matrix built downstream.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ParseError, QuiverError

__all__ = [
    "ArrowIndex",
    "Bundle",
    "Quiver",
    "WeightVector",
    "canonical_weight",
    "load",
    "parse",
    "require_valid",
    "serialize",
    "supporting_quiver",
    "validate",
]


class ArrowIndex(NamedTuple):
    bundle: int
    copy: int = 0


@dataclass(frozen=True)
class Bundle:
    src: str
    dst: str
    mult: int = 1


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    bundles: tuple[Bundle, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "bundles",
            tuple(b if isinstance(b, Bundle) else Bundle(*b) for b in self.bundles),
        )

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], vertices: Iterable[str] | None = None) -> Quiver:
        """Build a quiver from ``(src, dst)`` or ``(src, dst, mult)`` tuples.

        When ``vertices`` is omitted they are taken in order of first appearance.
        """
        bundles = [Bundle(e[0], e[1], e[2] if len(e) > 2 else 1) for e in edges]
        if vertices is None:
            seen: dict[str, None] = {}
            for b in bundles:
                seen.setdefault(b.src)
                seen.setdefault(b.dst)
            vertices = list(seen)
        return cls(tuple(vertices), tuple(bundles))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return sum(b.mult for b in self.bundles)

    @property
    def arrows(self) -> tuple[ArrowIndex, ...]:
        return tuple(ArrowIndex(i, c) for i, b in enumerate(self.bundles) for c in range(b.mult))

    def iter_arrows(self) -> Iterator[tuple[ArrowIndex, str, str]]:
        for i, b in enumerate(self.bundles):
            for c in range(b.mult):
                yield ArrowIndex(i, c), b.src, b.dst

    def flat_index(self, x) -> int:
        """Position of an arrow in the flattening order; accepts an int or an ArrowIndex."""
        if isinstance(x, int) and not isinstance(x, tuple):
            if not 0 <= x < self.num_arrows:
                raise IndexError(f"arrow {x} out of range")
            return x
        bundle, copy = x
        if not 0 <= bundle < len(self.bundles) or not 0 <= copy < self.bundles[bundle].mult:
            raise IndexError(f"arrow {tuple(x)} out of range")
        return sum(b.mult for b in self.bundles[:bundle]) + copy

    def arrow_at(self, flat: int) -> ArrowIndex:
        for i, b in enumerate(self.bundles):
            if flat < b.mult:
                return ArrowIndex(i, flat)
            flat -= b.mult
        raise IndexError("arrow index out of range")

    def endpoints(self, x) -> tuple[str, str]:
        b = self.bundles[self.arrow_at(x).bundle if isinstance(x, int) else x[0]]
        return b.src, b.dst

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow_label(self, x) -> str:
        a = self.arrow_at(x) if isinstance(x, int) else ArrowIndex(*x)
        b = self.bundles[a.bundle]
        return f"{b.src}->{b.dst}#{a.copy}"


@dataclass(frozen=True)
class WeightVector:
    """Integer weight per vertex; entries sum to zero."""

    vertices: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.vertices) != len(self.values):
            raise ValueError("weight vector length does not match vertex count")
        if sum(self.values) != 0:
            raise ValueError(f"weights must sum to zero, got {sum(self.values)}")

    def __getitem__(self, vertex: str) -> int:
        return self.values[self.vertices.index(vertex)]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.vertices, self.values))


def _undirected_components(vertices: Sequence[str], bundles: Sequence[Bundle]) -> int:
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for b in bundles:
        if b.src in adj and b.dst in adj:
            adj[b.src].add(b.dst)
            adj[b.dst].add(b.src)
    seen: set[str] = set()
    count = 0
    for v in vertices:
        if v in seen:
            continue
        count += 1
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def _has_directed_cycle(vertices: Sequence[str], bundles: Sequence[Bundle]) -> bool:
    indeg = {v: 0 for v in vertices}
    out: dict[str, list[str]] = {v: [] for v in vertices}
    for b in bundles:
        if b.src in indeg and b.dst in indeg:
            out[b.src].append(b.dst)
            indeg[b.dst] += 1
    queue = deque(v for v in vertices if indeg[v] == 0)
    visited = 0
    while queue:
        u = queue.popleft()
        visited += 1
        for w in out[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return visited < len(indeg)


def validate(q: Quiver) -> list[str]:
    """Return every invariant violation of ``q``; an empty list means valid."""
    problems: list[str] = []
    if not q.vertices:
        problems.append("empty quiver: at least one vertex required")
    seen: set[str] = set()
    for v in q.vertices:
        if v in seen:
            problems.append(f"duplicate vertex {v!r}")
        seen.add(v)
    pairs: dict[tuple[str, str], int] = {}
    for i, b in enumerate(q.bundles):
        for end in (b.src, b.dst):
            if end not in seen:
                problems.append(f"bundle {i}: unknown vertex {end!r}")
        if not isinstance(b.mult, int) or b.mult < 1:
            problems.append(f"bundle {i}: multiplicity must be a positive integer, got {b.mult!r}")
        if b.src == b.dst:
            problems.append(f"bundle {i}: loop at {b.src!r} (a loop is a directed cycle)")
            continue
        key = (b.src, b.dst)
        if key in pairs:
            problems.append(f"bundle {i}: duplicate bundle {b.src}->{b.dst} (use multiplicity)")
        elif (b.dst, b.src) in pairs:
            problems.append(f"bundle {i}: opposite bundles between {b.src!r} and {b.dst!r}")
        pairs.setdefault(key, i)
    if q.vertices and _undirected_components(list(seen), q.bundles) > 1:
        problems.append("quiver is not connected")
    non_loops = [b for b in q.bundles if b.src != b.dst]
    if _has_directed_cycle(list(seen), non_loops):
        problems.append("quiver contains a directed cycle")
    return problems


def require_valid(q: Quiver) -> None:
    problems = validate(q)
    if problems:
        raise QuiverError(problems)


def canonical_weight(q: Quiver) -> WeightVector:
    """In-coming minus out-going arrow count at every vertex."""
    require_valid(q)
    w = {v: 0 for v in q.vertices}
    for b in q.bundles:
        w[b.dst] += b.mult
        w[b.src] -= b.mult
    return WeightVector(q.vertices, tuple(w[v] for v in q.vertices))


def supporting_quiver(q: Quiver) -> Quiver:
    return Quiver(q.vertices, tuple(Bundle(b.src, b.dst, 1) for b in q.bundles))


def topological_order(q: Quiver) -> list[str]:
    """Kahn's algorithm; ties broken by vertex input order."""
    indeg = {v: 0 for v in q.vertices}
    for b in q.bundles:
        indeg[b.dst] += 1
    order: list[str] = []
    ready = [v for v in q.vertices if indeg[v] == 0]
    pos = {v: i for i, v in enumerate(q.vertices)}
    while ready:
        ready.sort(key=pos.__getitem__)
        u = ready.pop(0)
        order.append(u)
        for b in q.bundles:
            if b.src == u:
                indeg[b.dst] -= 1
                if indeg[b.dst] == 0:
                    ready.append(b.dst)
    if len(order) != len(q.vertices):
        raise QuiverError("quiver contains a directed cycle")
    return order


# --- text and JSON formats -------------------------------------------------


def parse(text: str) -> Quiver:
    """Parse the line-oriented ``vertex``/``arrow`` format.

    Only syntax is checked here; semantic problems are left to :func:`validate`.
    """
    vertices: list[str] = []
    bundles: list[Bundle] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected 'vertex <id>'", lineno)
            vertices.append(tokens[1])
        elif kind == "arrow":
            if len(tokens) not in (3, 4):
                raise ParseError("expected 'arrow <src> <dst> [mult=<k>]'", lineno)
            mult = 1
            if len(tokens) == 4:
                key, _, value = tokens[3].partition("=")
                if key != "mult" or not value:
                    raise ParseError(f"unexpected token {tokens[3]!r}", lineno)
                try:
                    mult = int(value)
                except ValueError:
                    raise ParseError(f"multiplicity {value!r} is not an integer", lineno) from None
            bundles.append(Bundle(tokens[1], tokens[2], mult))
        else:
            raise ParseError(f"unknown statement {kind!r}", lineno)
    return Quiver(tuple(vertices), tuple(bundles))


def serialize(q: Quiver) -> str:
    lines = [f"vertex {v}" for v in q.vertices]
    for b in q.bundles:
        lines.append(f"arrow {b.src} {b.dst}" + (f" mult={b.mult}" if b.mult != 1 else ""))
    return "\n".join(lines) + "\n"


def to_dict(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "bundles": [{"src": b.src, "dst": b.dst, "mult": b.mult} for b in q.bundles],
    }


def from_dict(data: dict) -> Quiver:
    try:
        bundles = tuple(Bundle(b["src"], b["dst"], b.get("mult", 1)) for b in data.get("bundles", []))
        return Quiver(tuple(data["vertices"]), bundles)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed quiver JSON: {exc}") from None


def load(path: str | Path) -> Quiver:
    """Read a quiver file; ``.json`` files use the JSON schema, anything else the text format."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            return from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno) from None
    return parse(text)
