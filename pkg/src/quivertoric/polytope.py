"""Invariant monomials (integer flows), the flow polytope, and the Delzant smoothness test.

The flow polytope is ``{x >= 0 : M^T x = theta}`` in arrow coordinates.  Its
direction lattice is the circulation lattice, whose HNF basis is exactly the
Gale matrix, so edge directions and rays share one coordinate system.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterator

from .errors import PreconditionError
from .gale import gale_matrix
from .linalg import IntMatrix, determinant, express_in_basis, rank
from .quiver import Quiver, canonical_weight, require_valid, topological_order

__all__ = [
    "PolytopeVertex",
    "SmoothnessReport",
    "VertexCheck",
    "aggregate_by_bundle",
    "invariant_monomials",
    "is_smooth",
    "polytope_vertices",
    "vertex_edges",
    "vertex_neighbors",
]

Flow = tuple[int, ...]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of ``parts`` non-negative ints."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def invariant_monomials(q: Quiver, degree: int = 1) -> list[Flow]:
    """Exponent vectors ``a >= 0`` with ``M^T a = degree * theta``, sorted lexicographically.

    Vertices are visited in topological order; when a vertex is reached all its
    in-coming arrows are already fixed, so its out-flow is determined and only
    has to be split among its out-going arrows.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    theta = canonical_weight(q).as_dict()
    order = topological_order(q)
    outs: dict[str, list[tuple[int, str]]] = {v: [] for v in q.vertices}
    for flat, (_, src, dst) in enumerate(q.iter_arrows()):
        outs[src].append((flat, dst))
    sinks = {v for v in q.vertices if not outs[v]}
    alpha = [0] * q.num_arrows
    inflow = {v: 0 for v in q.vertices}
    found: list[Flow] = []

    def visit(pos: int) -> None:
        if pos == len(order):
            found.append(tuple(alpha))
            return
        v = order[pos]
        total = inflow[v] - degree * theta[v]
        if total < 0:
            return
        arrows = outs[v]
        if not arrows:
            if total == 0:
                visit(pos + 1)
            return
        for split in _compositions(total, len(arrows)):
            ok = True
            for (flat, dst), amount in zip(arrows, split):
                alpha[flat] = amount
                inflow[dst] += amount
                if dst in sinks and inflow[dst] > degree * theta[dst]:
                    ok = False
            if ok:
                visit(pos + 1)
            for (flat, dst), amount in zip(arrows, split):
                alpha[flat] = 0
                inflow[dst] -= amount

    visit(0)
    found.sort()
    return found


def aggregate_by_bundle(q: Quiver, flows) -> list[tuple[tuple[int, ...], int]]:
    """Sum copies within each bundle; returns sorted ``(bundle exponents, count)`` pairs."""
    sizes = [b.mult for b in q.bundles]
    counts: Counter = Counter()
    for f in flows:
        agg, pos = [], 0
        for m in sizes:
            agg.append(sum(f[pos:pos + m]))
            pos += m
        counts[tuple(agg)] += 1
    return sorted(counts.items())


@dataclass(frozen=True, order=True)
class PolytopeVertex:
    coords: tuple[int, ...]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.coords) if a)


def _tree_solution(q: Quiver, tree: tuple[int, ...], theta: dict[str, int]) -> list[int] | None:
    """Solve ``M^T x = theta`` with support in ``tree`` by peeling leaves; None if not a spanning tree."""
    ends = [(s, t) for _, s, t in q.iter_arrows()]
    incident: dict[str, set[int]] = {v: set() for v in q.vertices}
    for e in tree:
        s, t = ends[e]
        incident[s].add(e)
        incident[t].add(e)
    residual = dict(theta)
    x = [0] * q.num_arrows
    remaining = set(q.vertices)
    leaves = [v for v in q.vertices if len(incident[v]) == 1]
    while leaves:
        v = leaves.pop()
        if v not in remaining or len(incident[v]) != 1:
            continue
        (e,) = incident[v]
        s, t = ends[e]
        if t == v:
            x[e] = residual[v]
            residual[s] += x[e]
            other = s
        else:
            x[e] = -residual[v]
            residual[t] -= x[e]
            other = t
        incident[other].discard(e)
        incident[v].clear()
        remaining.discard(v)
        if len(incident[other]) == 1:
            leaves.append(other)
    if len(remaining) != 1:
        return None
    return x


def polytope_vertices(q: Quiver) -> list[PolytopeVertex]:
    """Vertices of the flow polytope: non-negative solutions supported on spanning trees."""
    theta = canonical_weight(q).as_dict()
    n, m = q.num_vertices, q.num_arrows
    found: set[PolytopeVertex] = set()
    for tree in combinations(range(m), n - 1):
        x = _tree_solution(q, tree, theta)
        if x is not None and min(x, default=0) >= 0:
            found.add(PolytopeVertex(tuple(x)))
    return sorted(found)


def _primitive(v) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v) if g else tuple(v)


def vertex_neighbors(
    q: Quiver,
    v: PolytopeVertex,
    vertices: list[PolytopeVertex] | None = None,
    gale: IntMatrix | None = None,
) -> list[tuple[PolytopeVertex, tuple[int, ...]]]:
    """Adjacent vertices of ``v`` with the primitive edge direction towards each.

    ``v`` and ``w`` span an edge exactly when the coordinates vanishing on both
    cut the circulation lattice down to rank one.
    """
    if vertices is None:
        vertices = polytope_vertices(q)
    if gale is None:
        gale = gale_matrix(q)
    k = gale.nrows
    out = []
    for w in vertices:
        if w == v:
            continue
        common = [i for i, (a, b) in enumerate(zip(v.coords, w.coords)) if a == 0 and b == 0]
        if k - rank(gale.select_columns(common)) == 1:
            out.append((w, _primitive([b - a for a, b in zip(v.coords, w.coords)])))
    return out


def vertex_edges(q: Quiver, v: PolytopeVertex, **kwargs) -> list[tuple[int, ...]]:
    """Primitive integer edge directions leaving ``v``."""
    return [d for _, d in vertex_neighbors(q, v, **kwargs)]


@dataclass(frozen=True)
class VertexCheck:
    """Delzant data at one vertex: edges in arrow coordinates and in the lattice basis."""

    vertex: tuple[int, ...]
    edge_directions: tuple[tuple[int, ...], ...]
    edge_matrix: tuple[tuple[int, ...], ...]
    determinant: int | None  # None when the vertex is not simple

    @property
    def ok(self) -> bool:
        return self.determinant is not None and abs(self.determinant) == 1

    def reason(self, dim: int) -> str:
        if self.determinant is None:
            return f"vertex has {len(self.edge_directions)} edges in dimension {dim} (not simple)"
        return f"edge matrix determinant {self.determinant}"

    def to_dict(self) -> dict:
        return {
            "vertex": list(self.vertex),
            "edge_directions": [list(d) for d in self.edge_directions],
            "edge_matrix": [list(r) for r in self.edge_matrix],
            "determinant": self.determinant,
        }

    @classmethod
    def from_dict(cls, d: dict) -> VertexCheck:
        return cls(
            tuple(d["vertex"]),
            tuple(tuple(r) for r in d["edge_directions"]),
            tuple(tuple(r) for r in d["edge_matrix"]),
            d["determinant"],
        )


@dataclass(frozen=True)
class SmoothnessReport:
    verdict: str  # "smooth" or "singular"
    dimension: int
    vertex_count: int
    witness: VertexCheck | None = None
    confirmations: tuple[VertexCheck, ...] = field(default=())

    @property
    def smooth(self) -> bool:
        return self.verdict == "smooth"

    def summary(self) -> str:
        if self.smooth:
            return f"smooth: {self.vertex_count} vertices, all simple with unimodular edges (dimension {self.dimension})"
        w = self.witness
        return f"singular at vertex {list(w.vertex)}: {w.reason(self.dimension)}"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "dimension": self.dimension,
            "vertex_count": self.vertex_count,
            "witness": self.witness.to_dict() if self.witness else None,
            "confirmations": [c.to_dict() for c in self.confirmations],
        }

    @classmethod
    def from_dict(cls, d: dict) -> SmoothnessReport:
        return cls(
            d["verdict"],
            d["dimension"],
            d["vertex_count"],
            VertexCheck.from_dict(d["witness"]) if d["witness"] else None,
            tuple(VertexCheck.from_dict(c) for c in d["confirmations"]),
        )


def _worker_count() -> int:
    raw = os.environ.get("QUIVERTORIC_THREADS", "").strip()
    try:
        n = int(raw) if raw else 0
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _check_vertex(q: Quiver, v: PolytopeVertex, vertices, gale: IntMatrix) -> VertexCheck:
    k = gale.nrows
    edges = vertex_edges(q, v, vertices=vertices, gale=gale)
    coords = []
    for d in edges:
        c = express_in_basis(gale, d) if k else []
        if c is None:
            raise RuntimeError(f"edge direction {d} is not a circulation")
        coords.append(tuple(c))
    det = determinant(IntMatrix(tuple(coords), k)) if len(edges) == k else None
    return VertexCheck(v.coords, tuple(edges), tuple(coords), det)


def is_smooth(q: Quiver) -> SmoothnessReport:
    """Delzant test on the flow polytope.

    Smooth iff every vertex has exactly ``k`` edges and the primitive edge
    directions form a basis of the circulation lattice.  A singular verdict
    carries the first failing vertex; a smooth one carries every vertex check.
    """
    require_valid(q)
    gale = gale_matrix(q)
    k = gale.nrows
    vertices = polytope_vertices(q)
    if not vertices:
        raise PreconditionError("flow polytope is empty")
    workers = min(_worker_count(), len(vertices))
    if workers > 1 and len(vertices) > 8:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checks = list(pool.map(lambda v: _check_vertex(q, v, vertices, gale), vertices))
    else:
        checks = []
        for v in vertices:
            checks.append(_check_vertex(q, v, vertices, gale))
            if not checks[-1].ok:
                break
    bad = next((c for c in checks if not c.ok), None)
    if bad is not None:
        return SmoothnessReport("singular", k, len(vertices), witness=bad)
    return SmoothnessReport("smooth", k, len(vertices), confirmations=tuple(checks))
