"""Exact integer linear algebra.

Matrices are lists of rows of Python ints, so entries never overflow.
The central routine is :func:`smith_normal_form`, which also returns the
unimodular transforms; everything else (cokernels, quotient torsion,
integer solving) is built on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


class RankDeficiencyError(ValueError):
    """Raised when a matrix expected to have independent columns does not."""


# ---------------------------------------------------------------------------
# basic helpers


def to_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in rows]


def shape(A: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    return rows, cols


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = to_matrix(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, via fraction-free row reduction."""
    M = to_matrix(A)
    rows, cols = shape(M)
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        p = M[r][c]
        for i in range(r + 1, rows):
            f = M[i][c]
            if f:
                M[i] = [p * x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def is_unimodular(A: Sequence[Sequence[int]]) -> bool:
    rows, cols = shape(A)
    return rows == cols and determinant(A) in (1, -1)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        rows, cols = shape(self.D)
        return [self.D[i][i] for i in range(min(rows, cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _swap_rows(M: Matrix, i: int, j: int) -> None:
    M[i], M[j] = M[j], M[i]


def _swap_cols(M: Matrix, i: int, j: int) -> None:
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M: Matrix, src: int, dst: int, k: int) -> None:
    """row[dst] += k * row[src]"""
    M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]


def _add_col(M: Matrix, src: int, dst: int, k: int) -> None:
    """col[dst] += k * col[src]"""
    for row in M:
        row[dst] += k * row[src]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form of an integer matrix with transforms.

    Pivots on the entry of least absolute value in the remaining block and
    reduces by Euclidean steps until the pivot divides the whole block.
    Each row operation on ``D`` is mirrored on ``U`` and each column
    operation on ``V``; the result is verified before returning.

    >>> smith_normal_form([[2, 4], [-2, 6]]).diagonal
    [2, 10]
    """
    D = to_matrix(A)
    rows, cols = shape(D)
    U = identity(rows)
    V = identity(cols)

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(D[i][j]), i, j)
                       for i in range(t, rows) for j in range(t, cols) if D[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            if pi != t:
                _swap_rows(D, t, pi)
                _swap_rows(U, t, pi)
            if pj != t:
                _swap_cols(D, t, pj)
                _swap_cols(V, t, pj)
            p = D[t][t]

            clean = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // p
                    _add_row(D, t, i, -q)
                    _add_row(U, t, i, -q)
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // p
                    _add_col(D, t, j, -q)
                    _add_col(V, t, j, -q)
                    clean = clean and D[t][j] == 0
            if not clean:
                continue

            # pivot row/column are cleared; enforce divisibility on the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if D[i][j] % p), None)
            if bad is None:
                break
            _add_row(D, bad[0], t, 1)
            _add_row(U, bad[0], t, 1)

        if t < rows and t < cols and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    if rows and cols and matmul(matmul(U, A), V) != D:
        raise AssertionError("Smith normal form failed verification")
    return SmithDecomposition(U=U, D=D, V=V)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``, all ``di >= 2``."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {factors}")
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int], free_rank: int = 0) -> AbelianGroup:
        """Build from a Smith diagonal; units are dropped and zeros counted as free."""
        zero = sum(1 for d in diagonal if d == 0)
        factors = tuple(abs(d) for d in diagonal if abs(d) > 1)
        return cls(tuple(sorted(factors)), free_rank + zero)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def torsion(self) -> AbelianGroup:
        return AbelianGroup(self.invariant_factors, 0)

    @property
    def order(self) -> int:
        """Order of the torsion subgroup."""
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def primary_decomposition(self) -> list[int]:
        """Prime-power cyclic orders, sorted ascending."""
        out = []
        for d in self.invariant_factors:
            p = 2
            while d > 1:
                if d % p == 0:
                    q = 1
                    while d % p == 0:
                        d //= p
                        q *= p
                    out.append(q)
                p += 1
        return sorted(out)

    def render(self) -> str:
        """Invariant-factor rendering with equal factors grouped, e.g. ``Z/2Z x Z/4Z``, ``(Z/2Z)^3``."""
        if self.is_trivial:
            return "0"
        parts = []
        factors = list(self.invariant_factors)
        for q in sorted(set(factors)):
            k = factors.count(q)
            parts.append(f"Z/{q}Z" if k == 1 else f"(Z/{q}Z)^{k}")
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts)

    def __str__(self) -> str:
        return self.render()


def cokernel(A: Sequence[Sequence[int]]) -> AbelianGroup:
    """Cokernel of ``Z^cols -> Z^rows``, ``x -> A x``."""
    rows, cols = shape(A)
    if rows == 0:
        return AbelianGroup()
    if cols == 0:
        return AbelianGroup((), rows)
    diag = smith_normal_form(A).diagonal
    return AbelianGroup.from_diagonal(diag, rows - len(diag))


def quotient_torsion(M: Sequence[Sequence[int]]) -> AbelianGroup:
    """``Z^rows / (column span of M)`` for ``M`` with independent columns.

    The torsion part is given by the non-unit invariant factors of ``M``;
    the free rank is ``rows - cols``.
    """
    rows, cols = shape(M)
    if cols == 0:
        return AbelianGroup((), rows)
    snf = smith_normal_form(M)
    if snf.rank < cols:
        raise RankDeficiencyError(f"columns are dependent (rank {snf.rank} < {cols})")
    return AbelianGroup.from_diagonal(snf.diagonal[:cols], rows - cols)


def ext1_to_Z(G: AbelianGroup) -> AbelianGroup:
    """Ext^1(G, Z): the free part contributes nothing, Ext^1(Z/n, Z) = Z/n."""
    return G.torsion


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """Some integer ``x`` with ``A x = b``, or ``None`` if none exists."""
    rows, cols = shape(A)
    if len(b) != rows:
        raise ValueError("right-hand side has the wrong length")
    snf = smith_normal_form(A)
    c = matvec(snf.U, b)
    y = [0] * cols
    for i, ci in enumerate(c):
        d = snf.D[i][i] if i < cols else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return matvec(snf.V, y)


def unimodular_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n, m = shape(A)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    snf = smith_normal_form(A)
    if snf.diagonal != [1] * n:
        raise ValueError("matrix is not unimodular")
    # U A V = I  =>  A^-1 = V U
    return matmul(snf.V, snf.U)


def minors_gcd(A: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all k x k minors (0 if every such minor vanishes)."""
    from itertools import combinations

    rows, cols = shape(A)
    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, determinant([[A[i][j] for j in cs] for i in rs]))
            if g == 1:
                return 1
    return g
