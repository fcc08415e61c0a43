"""Independent brute-force oracles used only by the tests.

None of these share code paths with the package beyond the Quiver container.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd

import numpy as np


def incidence(q):
    col = {v: j for j, v in enumerate(q.vertices)}
    rows = []
    for b in q.bundles:
        for _ in range(b.mult):
            r = [0] * len(q.vertices)
            r[col[b.src]] -= 1
            r[col[b.dst]] += 1
            rows.append(r)
    return rows


def canonical(q):
    w = {v: 0 for v in q.vertices}
    for b in q.bundles:
        w[b.dst] += b.mult
        w[b.src] -= b.mult
    return [w[v] for v in q.vertices]


def fraction_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    rk, ncols = 0, len(a[0])
    for c in range(ncols):
        p = next((i for i in range(rk, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rk], a[p] = a[p], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][c] != 0:
                f = a[i][c] / a[rk][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def fraction_det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det)


def brute_force_flows(q, degree=1):
    """Every point of the box ``0 <= a_i <= sum |theta|`` with ``M^T a = degree * theta``."""
    theta = np.array(canonical(q)) * degree
    m = q.num_arrows
    if m == 0:
        return [()] if not theta.any() else []
    M = np.array(incidence(q))
    bound = int(np.abs(theta).sum())
    tail = min(m, 4)
    grid = np.array(list(product(range(bound + 1), repeat=tail)), dtype=np.int64)
    tail_div = grid @ M[m - tail:]
    found = []
    for head in product(range(bound + 1), repeat=m - tail):
        need = theta - (np.array(head, dtype=np.int64) @ M[: m - tail] if head else 0)
        hits = np.nonzero((tail_div == need).all(axis=1))[0]
        for h in hits:
            found.append(tuple(head) + tuple(int(a) for a in grid[h]))
    return sorted(found)


def all_simple_cycles(q):
    """All undirected simple cycles at arrow level, as signed vectors (both orientations)."""
    ends = [(b.src, b.dst) for b in q.bundles for _ in range(b.mult)]
    m = len(ends)
    out = set()

    def walk(start, v, used, vec, first):
        for e, (s, t) in enumerate(ends):
            if vec[e] or e < first:
                continue
            if s == v:
                w, sign = t, 1
            elif t == v:
                w, sign = s, -1
            else:
                continue
            vec[e] = sign
            if w == start:
                out.add(tuple(vec))
                out.add(tuple(-a for a in vec))
            elif w not in used:
                walk(start, w, used | {w}, vec, first)
            vec[e] = 0

    for f in range(m):
        s, t = ends[f]
        vec = [0] * m
        vec[f] = 1
        walk(s, t, {s, t}, vec, f)
    return out


def has_directed_cycle(vertices, edges):
    adj = {v: [] for v in vertices}
    for s, t in edges:
        adj[s].append(t)
    state = {v: 0 for v in vertices}

    def dfs(u):
        state[u] = 1
        for w in adj[u]:
            if state[w] == 1 or (state[w] == 0 and dfs(w)):
                return True
        state[u] = 2
        return False

    return any(state[v] == 0 and dfs(v) for v in vertices)


def contraction_creates_directed_cycle(q, flat):
    """Merge the endpoints of arrow ``flat`` (deleting it) and look for a directed cycle; loops count."""
    ends = [(b.src, b.dst) for b in q.bundles for _ in range(b.mult)]
    s, t = ends[flat]
    rename = {v: (s if v == t else v) for v in q.vertices}
    edges = [(rename[a], rename[b]) for i, (a, b) in enumerate(ends) if i != flat]
    verts = [v for v in q.vertices if v != t]
    return has_directed_cycle(verts, edges)


def _in_cone(target, gens):
    """Exact test whether ``target`` is a non-negative combination of ``gens`` (Caratheodory)."""
    k = len(target)
    for r in range(1, min(k, len(gens)) + 1):
        for sub in combinations(gens, r):
            if fraction_rank(sub) != r:
                continue
            # Gauss-Jordan on the augmented system [sub^T | target]
            a = [[Fraction(sub[i][j]) for i in range(r)] + [Fraction(target[j])] for j in range(k)]
            rk = 0
            for c in range(r):
                p = next((i for i in range(rk, k) if a[i][c] != 0), None)
                if p is None:
                    break
                a[rk], a[p] = a[p], a[rk]
                for i in range(k):
                    if i != rk and a[i][c] != 0:
                        f = a[i][c] / a[rk][c]
                        a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
                rk += 1
            if rk < r or any(a[i][r] != 0 for i in range(rk, k)):
                continue
            coeffs = [a[i][r] / a[i][i] for i in range(r)]
            if all(c >= 0 for c in coeffs):
                return True
    return False


def _primitive(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v)


def normal_cone_smooth(q, vertices, gale_rows):
    """Smoothness from the fan side: at each vertex, the Gale columns of the arrows
    vanishing there generate the normal cone; require its extreme rays to be a lattice basis.
    """
    k = len(gale_rows)
    if k == 0:
        return True
    cols = [tuple(r[j] for r in gale_rows) for j in range(len(gale_rows[0]))]
    for v in vertices:
        tight = sorted({_primitive(cols[i]) for i, a in enumerate(v) if a == 0 and any(cols[i])})
        extreme = [g for g in tight if not _in_cone(g, [h for h in tight if h != g])]
        if len(extreme) != k or abs(fraction_det(extreme)) != 1:
            return False
    return True
