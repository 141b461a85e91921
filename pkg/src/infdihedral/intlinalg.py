"""Exact integer and mod-2 linear algebra.

Everything here works on Python integers, so there is no overflow however
large the intermediate coefficients of a Smith reduction become.  Products
go through numpy ``object`` arrays, which keep Python ints as entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def from_array(cls, arr) -> "IntMatrix":
        arr = np.asarray(arr, dtype=object)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(arr.shape[0], arr.shape[1], tuple(int(x) for x in arr.flat))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def array(self) -> np.ndarray:
        """Object-dtype copy; safe for exact products."""
        return np.array(self.entries, dtype=object).reshape(self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            ri = self.row(i)
            oi = out[i]
            for k, a in enumerate(ri):
                if a:
                    for j, b in enumerate(other.row(k)):
                        if b:
                            oi[j] += a * b
        return IntMatrix.from_rows(out, other.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.to_rows())

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


def bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def _pick_pivot(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        ai = a[i]
        for j in range(t, cols):
            x = ai[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with the transforming matrices.

    Pivot rule: the entry of smallest absolute value in the remaining block,
    ties broken by lowest row then lowest column.  The output is a pure
    function of the input.
    """
    m, n = A.rows, A.cols
    a = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    factors = []
    for t in range(min(m, n)):
        piv = _pick_pivot(a, t, m, n)
        if piv is None:
            break
        _, i, j = piv
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived in row/col t
                best = None
                for i in range(t + 1, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), "r", i)
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), "c", j)
                if best[1] == "r":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        factors.append(a[t][t])

    return SmithDecomposition(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(a, n),
        V=IntMatrix.from_rows(V, n),
        invariant_factors=tuple(factors),
    )


def rank_and_betti(A: IntMatrix, n_generators: int) -> tuple[int, int]:
    """Rank of a relator matrix and the Betti number of its cokernel."""
    if A.rows and A.cols != n_generators:
        raise ValueError("relator matrix width does not match generator count")
    rank = smith_normal_form(A).rank
    return rank, n_generators - rank


def _mod2_rref(A) -> tuple[np.ndarray, list[int]]:
    a = np.array(A, dtype=np.int64, ndmin=2) % 2
    a = a.astype(np.uint8)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        k = r + hits[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def mod2_rank(A) -> int:
    return len(_mod2_rref(A)[1])


def mod2_nullspace(A, cols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the kernel of ``A`` over the field with two elements.

    ``A`` is any 2-d array-like of integers (reduced mod 2).  Pass ``cols``
    when ``A`` has no rows.  Basis vectors come one per free column, in
    column order.
    """
    a = np.asarray(A)
    if a.size == 0:
        if cols is None:
            cols = a.shape[1] if a.ndim == 2 else 0
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    rref, pivots = _mod2_rref(a)
    ncols = rref.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = int(rref[r, f])
        basis.append(tuple(v))
    return basis


def content_and_primitive(v: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Split ``v`` as content times a primitive vector.

    The primitive vector has gcd 1 and its first nonzero entry positive.
    """
    v = tuple(int(x) for x in v)
    c = 0
    for x in v:
        c = gcd(c, x)
    if c == 0:
        raise ValueError("no primitive multiple of the zero vector")
    first = next(x for x in v if x)
    if first < 0:
        c_signed = -c
    else:
        c_signed = c
    return c, tuple(x // c_signed for x in v)


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    from fractions import Fraction

    n = U.rows
    if U.cols != n:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in U.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    inv = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([[int(x) for x in row] for row in inv], n)
