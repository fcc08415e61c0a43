"""Exact integer matrices: Hermite normal form, saturated kernels, rank, determinant.

Everything here works on Python ints; there is no floating point anywhere.
Matrices are small (tens of rows), so plain nested tuples are fast enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "determinant",
    "express_in_basis",
    "hermite_normal_form",
    "left_kernel_basis",
    "rank",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError(f"ragged matrix: row of length {len(r)} in a {self.ncols}-column matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} out of range for {self.ncols} columns")
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(tuple(tuple(r[j] for j in cols) for r in self.rows), len(cols))

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(self.columns()), self.nrows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def hermite_normal_form(m) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns ``(h, u)`` with ``u @ m == h`` and ``u`` unimodular.

    Nonzero rows of ``h`` come first, pivots are positive and strictly
    increasing in column, and entries above a pivot ``p`` lie in ``[0, p)``.
    """
    m = _as_matrix(m)
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]

    def sub(i: int, p: int, q: int) -> None:
        # row_i -= q * row_p, on both a and u
        if q:
            ai, ap = a[i], a[p]
            for c in range(nc):
                ai[c] -= q * ap[c]
            ui, up = u[i], u[p]
            for c in range(nr):
                ui[c] -= q * up[c]

    piv = 0
    for col in range(nc):
        if piv >= nr:
            break
        while True:
            nonzero = [i for i in range(piv, nr) if a[i][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: (abs(a[i][col]), i))
            a[piv], a[best] = a[best], a[piv]
            u[piv], u[best] = u[best], u[piv]
            clean = True
            for i in range(piv + 1, nr):
                if a[i][col]:
                    sub(i, piv, a[i][col] // a[piv][col])
                    clean = clean and a[i][col] == 0
            if clean:
                break
        if a[piv][col] == 0:
            continue
        if a[piv][col] < 0:
            a[piv] = [-x for x in a[piv]]
            u[piv] = [-x for x in u[piv]]
        p = a[piv][col]
        for i in range(piv):
            sub(i, piv, a[i][col] // p)
        piv += 1
    return IntMatrix.from_rows(a, nc), IntMatrix.from_rows(u, nr)


def _nonzero_rows(h: IntMatrix) -> list[tuple[int, ...]]:
    return [r for r in h.rows if any(r)]


def left_kernel_basis(m) -> IntMatrix:
    """Basis (in HNF) of the saturated lattice ``{v in Z^rows : v @ m == 0}``."""
    m = _as_matrix(m)
    h, u = hermite_normal_form(m)
    r = len(_nonzero_rows(h))
    kernel = u.rows[r:]
    if not kernel:
        return IntMatrix((), m.nrows)
    kh, _ = hermite_normal_form(IntMatrix(kernel, m.nrows))
    return IntMatrix(tuple(_nonzero_rows(kh)), m.nrows)


def _bareiss(m: IntMatrix) -> tuple[int, int]:
    """Fraction-free elimination; returns (rank, sign * last pivot)."""
    a = [list(r) for r in m.rows]
    nr, nc = m.shape
    prev = 1
    sign = 1
    rk = 0
    for col in range(nc):
        if rk >= nr:
            break
        pivot = next((i for i in range(rk, nr) if a[i][col]), None)
        if pivot is None:
            continue
        if pivot != rk:
            a[rk], a[pivot] = a[pivot], a[rk]
            sign = -sign
        p = a[rk][col]
        for i in range(rk + 1, nr):
            ai = a[i]
            f = ai[col]
            for c in range(col + 1, nc):
                ai[c] = (ai[c] * p - f * a[rk][c]) // prev
            ai[col] = 0
        prev = p
        rk += 1
    return rk, sign * prev


def rank(m) -> int:
    """Rank over the rationals."""
    m = _as_matrix(m)
    return _bareiss(m)[0]


def determinant(m) -> int:
    m = _as_matrix(m)
    if m.nrows != m.ncols:
        raise ValueError(f"determinant of a non-square {m.shape} matrix")
    if m.nrows == 0:
        return 1
    rk, det = _bareiss(m)
    return det if rk == m.nrows else 0


def express_in_basis(basis, vector: Sequence[int]) -> list[int] | None:
    """Integer coefficients ``c`` with ``c @ basis == vector``, or None if ``vector``
    is not in the row lattice of ``basis``.  The rows of ``basis`` must be independent.
    """
    basis = _as_matrix(basis)
    if len(vector) != basis.ncols:
        raise ValueError("vector length does not match basis width")
    h, u = hermite_normal_form(basis)
    hr = _nonzero_rows(h)
    if len(hr) != basis.nrows:
        raise ValueError("basis rows are linearly dependent")
    residual = list(vector)
    coeffs = []
    for row in hr:
        col = next(j for j, a in enumerate(row) if a)
        q, r = divmod(residual[col], row[col])
        if r:
            return None
        coeffs.append(q)
        if q:
            residual = [x - q * y for x, y in zip(residual, row)]
    if any(residual):
        return None
    # c_h @ h == vector and h == u @ basis, so c == c_h @ u
    return [sum(coeffs[i] * u.rows[i][j] for i in range(len(coeffs))) for j in range(basis.nrows)]
