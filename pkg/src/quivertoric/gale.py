"""Incidence matrices, Gale matrices and fan rays of a quiver."""

from __future__ import annotations

from typing import Sequence

from .linalg import IntMatrix, determinant, express_in_basis, left_kernel_basis, rank
from .quiver import Quiver, require_valid
from .structure import contract, cycle_basis_through

__all__ = [
    "deletion_transform",
    "gale_from_cycle_basis",
    "gale_matrix",
    "incidence_matrix",
    "ray",
    "ray_dot",
    "rays",
    "vertex_sum_defects",
]


def incidence_matrix(q: Quiver) -> IntMatrix:
    """Arrows x vertices; the row of an arrow is -1 at its source and +1 at its target."""
    require_valid(q)
    col = {v: j for j, v in enumerate(q.vertices)}
    rows = []
    for _, src, dst in q.iter_arrows():
        r = [0] * q.num_vertices
        r[col[src]] = -1
        r[col[dst]] = 1
        rows.append(tuple(r))
    return IntMatrix(tuple(rows), q.num_vertices)


def gale_matrix(q: Quiver) -> IntMatrix:
    """HNF basis of the integer left kernel of the incidence matrix (k x m)."""
    return left_kernel_basis(incidence_matrix(q))


def gale_from_cycle_basis(q: Quiver, x) -> IntMatrix:
    """Gale matrix whose rows are the signed cycles of ``cycle_basis_through(q, x)``."""
    cycles = cycle_basis_through(q, x)
    g = IntMatrix(tuple(cycles), q.num_arrows)
    k = q.num_arrows - q.num_vertices + 1
    if g.nrows != k or rank(g) != k:
        raise RuntimeError(f"cycle basis through {tuple(x) if isinstance(x, tuple) else x} is not independent")
    return g


def ray(g: IntMatrix, x, q: Quiver | None = None) -> tuple[int, ...]:
    """Column of ``g`` for arrow ``x`` (a flat index, or an ArrowIndex together with ``q``)."""
    if isinstance(x, tuple):
        if q is None:
            raise TypeError("an ArrowIndex needs the quiver to be resolved")
        x = q.flat_index(x)
    return g.column(x)


def rays(g: IntMatrix) -> list[tuple[int, ...]]:
    return g.columns()


def ray_dot(r1: Sequence[int], r2: Sequence[int]) -> int:
    if len(r1) != len(r2):
        raise ValueError("rays of different length")
    return sum(a * b for a, b in zip(r1, r2))


def vertex_sum_defects(q: Quiver, g: IntMatrix) -> list[str]:
    """Vertices where the out-going rays do not sum to the in-coming rays."""
    k = g.nrows
    out = {v: [0] * k for v in q.vertices}
    inc = {v: [0] * k for v in q.vertices}
    for flat, (_, src, dst) in enumerate(q.iter_arrows()):
        col = g.column(flat)
        for i in range(k):
            out[src][i] += col[i]
            inc[dst][i] += col[i]
    return [v for v in q.vertices if out[v] != inc[v]]


def deletion_transform(q: Quiver, x) -> IntMatrix | None:
    """Unimodular ``U`` with ``U @ gale(Q_x) == gale(Q)`` minus the column of ``x``.

    Columns of ``gale(Q_x)`` are matched to the surviving arrows of ``Q`` via the
    contraction's arrow map.  Returns None when no such ``U`` exists.
    """
    if isinstance(x, int):
        x = q.arrow_at(x)
    fx = q.flat_index(x)
    result = contract(q, x)
    g = gale_matrix(q)
    gx = gale_matrix(result.quiver)
    kept = [a for a in q.arrows if q.flat_index(a) != fx]
    target = g.select_columns([q.flat_index(a) for a in kept])
    source = gx.select_columns([result.quiver.flat_index(result.arrow_map[a]) for a in kept])
    if source.nrows != target.nrows:
        return None
    if source.nrows == 0:
        return IntMatrix((), 0)
    u_rows = []
    for row in target.rows:
        coeffs = express_in_basis(source, row)
        if coeffs is None:
            return None
        u_rows.append(tuple(coeffs))
    u = IntMatrix(tuple(u_rows), source.nrows)
    if abs(determinant(u)) != 1:
        return None
    return u
