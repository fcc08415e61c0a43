"""Seeded random generation of small valid quivers, used for corpus-wide checks."""

from __future__ import annotations

import random
from pathlib import Path

from .quiver import Bundle, Quiver, require_valid, serialize

NAMES = "abcdefghijklmnopqrstuvwxyz"


def random_quiver(rng: random.Random, max_vertices: int = 5, max_arrows: int = 8) -> Quiver:
    """A connected quiver without directed cycles and with at most ``max_arrows`` arrows."""
    n = rng.randint(2, max_vertices)
    names = list(NAMES[:n])
    order = names[:]
    rng.shuffle(order)  # hidden topological order; arrows always point forward in it
    rank = {v: i for i, v in enumerate(order)}

    def oriented(u, v):
        return (u, v) if rank[u] < rank[v] else (v, u)

    pairs = []
    for i in range(1, n):
        pairs.append(oriented(order[i], order[rng.randrange(i)]))
    others = [oriented(u, v) for i, u in enumerate(names) for v in names[i + 1:]]
    others = [p for p in others if p not in pairs]
    rng.shuffle(others)
    budget = max_arrows - len(pairs)
    extra = rng.randint(0, min(len(others), budget))
    pairs += others[:extra]
    rng.shuffle(pairs)
    mults = [1] * len(pairs)
    for _ in range(rng.randint(0, max_arrows - len(pairs))):
        mults[rng.randrange(len(pairs))] += 1
    q = Quiver(tuple(names), tuple(Bundle(s, t, m) for (s, t), m in zip(pairs, mults)))
    require_valid(q)
    return q


def random_corpus(count: int = 100, seed: int = 20240611, **kwargs) -> list[Quiver]:
    rng = random.Random(seed)
    return [random_quiver(rng, **kwargs) for _ in range(count)]


def write_corpus(quivers, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, q in enumerate(quivers):
        p = directory / f"q{i:03d}.qv"
        p.write_text(serialize(q))
        paths.append(p)
    return paths
