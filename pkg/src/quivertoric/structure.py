"""Cycle combinatorics, contraction, simplification and block decomposition of quivers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import networkx as nx

from .errors import PreconditionError
from .quiver import ArrowIndex, Bundle, Quiver, WeightVector, canonical_weight, require_valid

__all__ = [
    "Contraction",
    "ContractionStep",
    "cycle_basis",
    "cycle_basis_through",
    "cycle_space_dimension",
    "contract",
    "contractible_arrows",
    "decompose",
    "has_proper_cycle",
    "in_cycle",
    "is_contractible",
    "simplify",
]

SignedCycle = tuple[int, ...]


def cycle_space_dimension(q: Quiver) -> int:
    """Number of independent cycles, ``|Q1| - |Q0| + 1``, arrows counted with multiplicity."""
    require_valid(q)
    return q.num_arrows - q.num_vertices + 1


def _tree_path(adj: dict[str, list[tuple[int, str]]], start: str, goal: str) -> list[tuple[int, str, str]]:
    """Path in a tree as ``(edge id, from, to)`` steps, found by BFS."""
    prev: dict[str, tuple[int, str] | None] = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            break
        for e, w in adj[u]:
            if w not in prev:
                prev[w] = (e, u)
                queue.append(w)
    steps = []
    v = goal
    while prev[v] is not None:
        e, u = prev[v]
        steps.append((e, u, v))
        v = u
    steps.reverse()
    return steps


def _fundamental_cycles(q: Quiver, tree: set[int], chords: list[int]) -> list[SignedCycle]:
    """One signed cycle per chord: the chord traversed forwards, closed through the tree."""
    ends = [(src, dst) for _, src, dst in q.iter_arrows()]
    adj: dict[str, list[tuple[int, str]]] = {v: [] for v in q.vertices}
    for e in tree:
        s, t = ends[e]
        adj[s].append((e, t))
        adj[t].append((e, s))
    for v in adj:
        adj[v].sort()
    cycles = []
    for chord in chords:
        vec = [0] * q.num_arrows
        vec[chord] = 1
        s, t = ends[chord]
        for e, a, b in _tree_path(adj, t, s):
            vec[e] = 1 if ends[e] == (a, b) else -1
        cycles.append(tuple(vec))
    return cycles


def _spanning_tree(q: Quiver, first: int | None = None) -> set[int]:
    """Arrow-level spanning tree grown greedily in flattening order (optionally seeded)."""
    parent = {v: v for v in q.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    ends = [(src, dst) for _, src, dst in q.iter_arrows()]
    order = list(range(q.num_arrows))
    if first is not None:
        order.remove(first)
        order.insert(0, first)
    tree = set()
    for e in order:
        a, b = find(ends[e][0]), find(ends[e][1])
        if a != b:
            parent[a] = b
            tree.add(e)
    return tree


def cycle_basis(q: Quiver) -> list[SignedCycle]:
    """Fundamental cycles of a spanning tree of the supporting quiver, followed per
    bundle by the two-arrow cycles ``+x_c - x_(c+1)`` between consecutive copies.
    """
    require_valid(q)
    # BFS tree on bundles, using copy 0 of each tree bundle
    adj: dict[str, list[tuple[int, str]]] = {v: [] for v in q.vertices}
    for i, b in enumerate(q.bundles):
        adj[b.src].append((i, b.dst))
        adj[b.dst].append((i, b.src))
    seen = {q.vertices[0]}
    queue = deque([q.vertices[0]])
    tree_bundles = set()
    while queue:
        u = queue.popleft()
        for i, w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                tree_bundles.add(i)
                queue.append(w)
    tree = {q.flat_index(ArrowIndex(i, 0)) for i in tree_bundles}
    cycles: list[SignedCycle] = []
    for i, b in enumerate(q.bundles):
        base = q.flat_index(ArrowIndex(i, 0))
        if i not in tree_bundles:
            cycles.extend(_fundamental_cycles(q, tree, [base]))
        for c in range(b.mult - 1):
            vec = [0] * q.num_arrows
            vec[base + c] = 1
            vec[base + c + 1] = -1
            cycles.append(tuple(vec))
    return cycles


def cycle_basis_through(q: Quiver, x) -> list[SignedCycle]:
    """A cycle basis in which every arrow keeps one orientation relative to ``x``.

    Built from a spanning tree that contains ``x``: every basis cycle through
    ``x`` enters the two tree halves at the ends of ``x`` and walks each half
    towards or away from the same root, so tree arrows are always traversed the
    same way relative to ``x``, and every chord lies in exactly one cycle.
    """
    if not is_contractible(q, x):
        raise PreconditionError(f"arrow {tuple(q.arrow_at(q.flat_index(x)))} is not contractible")
    fx = q.flat_index(x)
    tree = _spanning_tree(q, first=fx)
    chords = [e for e in range(q.num_arrows) if e not in tree]
    return _fundamental_cycles(q, tree, chords)


def _reaches(q: Quiver, start: str, goal: str, skip_bundle: int) -> bool:
    out: dict[str, list[str]] = {v: [] for v in q.vertices}
    for i, b in enumerate(q.bundles):
        if i != skip_bundle:
            out[b.src].append(b.dst)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        if u == goal:
            return True
        for w in out[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def is_contractible(q: Quiver, x) -> bool:
    """A single-arrow whose endpoints are joined by no other directed path."""
    require_valid(q)
    bundle = q.arrow_at(q.flat_index(x)).bundle
    b = q.bundles[bundle]
    if b.mult != 1:
        return False
    return not _reaches(q, b.src, b.dst, skip_bundle=bundle)


def in_cycle(q: Quiver, x) -> bool:
    """True when arrow ``x`` lies on some (undirected) cycle."""
    bundle = q.arrow_at(q.flat_index(x)).bundle
    b = q.bundles[bundle]
    if b.mult > 1:
        return True
    g = nx.Graph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((c.src, c.dst) for i, c in enumerate(q.bundles) if i != bundle)
    return nx.has_path(g, b.src, b.dst)


class Contraction(NamedTuple):
    quiver: Quiver
    vertex_map: dict[str, str]
    arrow_map: dict[ArrowIndex, ArrowIndex]


def _merged_name(q: Quiver, u: str, v: str) -> str:
    name = u + v
    while name in q.vertices:
        name += "'"
    return name


def contract(q: Quiver, x) -> Contraction:
    """Remove ``x`` and merge its endpoints; bundles that become parallel are merged
    by adding multiplicities.  Returns the new quiver plus vertex and arrow maps.
    """
    if not is_contractible(q, x):
        raise PreconditionError(f"arrow {tuple(q.arrow_at(q.flat_index(x)))} is not contractible")
    xb = q.arrow_at(q.flat_index(x)).bundle
    u, v = q.bundles[xb].src, q.bundles[xb].dst
    merged = _merged_name(q, u, v)
    vmap = {w: (merged if w in (u, v) else w) for w in q.vertices}
    vertices: list[str] = []
    for w in q.vertices:
        if vmap[w] not in vertices:
            vertices.append(vmap[w])

    bundles: list[list] = []
    where: dict[tuple[str, str], int] = {}
    amap: dict[ArrowIndex, ArrowIndex] = {}
    for i, b in enumerate(q.bundles):
        if i == xb:
            continue
        key = (vmap[b.src], vmap[b.dst])
        if key in where:
            j = where[key]
            offset = bundles[j][2]
            bundles[j][2] += b.mult
        else:
            j = where[key] = len(bundles)
            offset = 0
            bundles.append([key[0], key[1], b.mult])
        for c in range(b.mult):
            amap[ArrowIndex(i, c)] = ArrowIndex(j, offset + c)
    result = Quiver(tuple(vertices), tuple(Bundle(*b) for b in bundles))
    require_valid(result)
    return Contraction(result, vmap, amap)


@dataclass(frozen=True)
class ContractionStep:
    src: str
    dst: str
    merged: str
    kind: str  # "neutral" or "blowdown"

    def to_dict(self) -> dict:
        return {"src": self.src, "dst": self.dst, "merged": self.merged, "kind": self.kind}

    @classmethod
    def from_dict(cls, d: dict) -> ContractionStep:
        return cls(d["src"], d["dst"], d["merged"], d["kind"])


def contractible_arrows(q: Quiver) -> list[ArrowIndex]:
    return [ArrowIndex(i, 0) for i, b in enumerate(q.bundles) if b.mult == 1 and is_contractible(q, ArrowIndex(i, 0))]


def simplify(q: Quiver, reverse: bool = False) -> tuple[Quiver, tuple[ContractionStep, ...]]:
    """Contract arrows until none is contractible.

    Each step takes the contractible arrow earliest in flattening order (latest
    when ``reverse``) and is logged as ``blowdown`` when the arrow lies on a
    cycle, ``neutral`` otherwise.
    """
    require_valid(q)
    log: list[ContractionStep] = []
    while True:
        candidates = contractible_arrows(q)
        if not candidates:
            return q, tuple(log)
        x = candidates[-1] if reverse else candidates[0]
        kind = "blowdown" if in_cycle(q, x) else "neutral"
        b = q.bundles[x.bundle]
        result = contract(q, x)
        log.append(ContractionStep(b.src, b.dst, result.vertex_map[b.src], kind))
        q = result.quiver


def has_proper_cycle(q: Quiver) -> bool:
    """Whether the supporting quiver has an undirected cycle (is not a tree)."""
    require_valid(q)
    return len(q.bundles) > q.num_vertices - 1


def decompose(q: Quiver) -> list[tuple[Quiver, WeightVector]]:
    """Split ``q`` into the blocks of its supporting graph.

    Flows of ``q`` factor as products of flows on the blocks.  Each block's
    weight is the restriction of the canonical weight, corrected at cut
    vertices by the net multiplicity on the removed side; this equals the
    block's own canonical weight.
    """
    require_valid(q)
    if not q.bundles:
        return [(q, canonical_weight(q))]
    theta = canonical_weight(q)
    pair_to_bundle = {}
    for i, b in enumerate(q.bundles):
        pair_to_bundle[frozenset((b.src, b.dst))] = i
    g = nx.Graph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((b.src, b.dst) for b in q.bundles)
    blocks = []
    for edges in nx.biconnected_component_edges(g):
        blocks.append(sorted(pair_to_bundle[frozenset(e)] for e in edges))
    blocks.sort()
    factors = []
    for idx in blocks:
        members = set(idx)
        verts = {q.bundles[i].src for i in idx} | {q.bundles[i].dst for i in idx}
        vertices = tuple(v for v in q.vertices if v in verts)
        sub = Quiver(vertices, tuple(q.bundles[i] for i in idx))
        weights = []
        for v in vertices:
            correction = 0
            for i, b in enumerate(q.bundles):
                if i in members:
                    continue
                if b.src == v:
                    correction += b.mult
                elif b.dst == v:
                    correction -= b.mult
            weights.append(theta[v] + correction)
        factors.append((sub, WeightVector(vertices, tuple(weights))))
    return factors
