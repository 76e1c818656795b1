"""Exact integer linear algebra: Hermite normal form, rank, kernels, solves.

Matrices are plain lists of rows of Python ints, so nothing here can
overflow.  Numpy arrays are accepted as input and converted.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

Matrix = list[list[int]]


def as_matrix(A, cols: int | None = None) -> Matrix:
    """Copy ``A`` into a list of int rows; ``cols`` fixes the width of an empty matrix."""
    rows = [[int(x) for x in row] for row in A]
    if cols is not None and rows and any(len(r) != cols for r in rows):
        raise ValueError("ragged or mis-sized matrix")
    return rows


def ncols(A: Matrix, default: int = 0) -> int:
    return len(A[0]) if A else default


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    n = ncols(A, cols or 0)
    return [[A[i][j] for i in range(len(A))] for j in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * int(x) for a, x in zip(row, v)) for row in A]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _axpy(q: int, x: list[int], y: list[int]) -> list[int]:
    # y - q*x
    return [b - q * a for a, b in zip(x, y)]


def hnf(A) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U A`` and ``U`` unimodular.  Pivots are
    positive, entries above a pivot lie in ``[0, pivot)``, zero rows sit at
    the bottom.  Elimination in each column repeatedly picks the row with
    the smallest non-zero absolute value (lowest index on ties).
    """
    H = as_matrix(A)
    m = len(H)
    n = ncols(H)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if H[i][c]]
            if not live:
                break
            p = min(live, key=lambda i: (abs(H[i][c]), i))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = _axpy(q, H[r], H[i])
                    U[i] = _axpy(q, U[r], U[i])
                    clean = clean and H[i][c] == 0
            if clean:
                break
        if not H[r][c]:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = _axpy(q, H[r], H[i])
                U[i] = _axpy(q, U[r], U[i])
        r += 1
    return H, U


def pivots(H: Matrix) -> list[int]:
    """Pivot column of every non-zero row of an echelon matrix."""
    out = []
    for row in H:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def _bareiss(A: Matrix) -> tuple[int, int]:
    """Fraction-free elimination; returns (rank, signed last pivot)."""
    M = [row[:] for row in A]
    m, n = len(M), ncols(M)
    prev, r, sign = 1, 0, 1
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        for i in range(r + 1, m):
            M[i] = [(M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev for j in range(n)]
        prev = M[r][c]
        r += 1
        if r == m:
            break
    return r, sign * prev


def rank(A) -> int:
    return _bareiss(as_matrix(A))[0]


def det(A) -> int:
    M = as_matrix(A)
    n = len(M)
    if n == 0:
        return 1
    if ncols(M) != n:
        raise ValueError("determinant of a non-square matrix")
    r, d = _bareiss(M)
    return d if r == n else 0


@dataclass(frozen=True)
class LatticeBasis:
    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(g) != self.ambient_dim for g in self.generators):
            raise ValueError("generator length differs from ambient dimension")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def matrix(self) -> Matrix:
        return [list(g) for g in self.generators]

    def array(self) -> np.ndarray:
        return np.array(self.generators, dtype=np.int64).reshape(len(self.generators), self.ambient_dim)

    def __contains__(self, v) -> bool:
        return lattice_coordinates(self, v) is not None

    @classmethod
    def spanned_by(cls, vectors, ambient_dim: int | None = None) -> "LatticeBasis":
        """Canonical basis (HNF rows) of the lattice generated by ``vectors``."""
        V = as_matrix(vectors)
        n = ncols(V, ambient_dim or 0)
        H, _ = hnf(V)
        return cls(n, tuple(tuple(r) for r in H if any(r)))


def kernel_lattice(A, cols: int | None = None) -> LatticeBasis:
    """ℤ-basis of ``{v integer : A v = 0}``, returned in Hermite normal form."""
    M = as_matrix(A)
    n = ncols(M, cols or 0)
    if not M:
        return LatticeBasis(n, tuple(tuple(r) for r in identity(n)))
    H, U = hnf(transpose(M))
    K = [U[i] for i in range(n) if not any(H[i])]
    return LatticeBasis.spanned_by(K, n)


def lattice_coordinates(L: LatticeBasis, v) -> list[int] | None:
    """Integer coefficients c with ``sum c_i g_i = v``, or None."""
    v = [int(x) for x in v]
    if len(v) != L.ambient_dim:
        raise ValueError("vector length differs from ambient dimension")
    H, U = hnf(L.matrix())
    piv = pivots(H)
    rest = v[:]
    y = [0] * len(H)
    for k, p in enumerate(piv):
        if rest[p] % H[k][p]:
            return None
        y[k] = rest[p] // H[k][p]
        if y[k]:
            rest = _axpy(y[k], H[k], rest)
    if any(rest):
        return None
    # v = y H = y U G
    return [sum(y[k] * U[k][i] for k in range(len(H))) for i in range(len(U))]


def solve_integer(A, b) -> list[int] | None:
    """Some integer x with ``A x = b``, or None if there is none."""
    M = as_matrix(A)
    b = [int(x) for x in b]
    if len(b) != len(M):
        raise ValueError("right-hand side length differs from row count")
    n = ncols(M)
    if n == 0:
        return [] if not any(b) else None
    # U A^T = H, so A U^T = H^T; write b = sum_k y_k H[k] and take x = U^T y.
    H, U = hnf(transpose(M))
    piv = pivots(H)
    rest = b[:]
    y = [0] * n
    for k, p in enumerate(piv):
        if rest[p] % H[k][p]:
            return None
        y[k] = rest[p] // H[k][p]
        if y[k]:
            rest = _axpy(y[k], H[k], rest)
    if any(rest):
        return None
    return [sum(U[k][j] * y[k] for k in range(n)) for j in range(n)]


def row_basis(A) -> list[int]:
    """Indices of a lexicographically first maximal independent set of rows."""
    M = as_matrix(A)
    chosen: list[int] = []
    for i in range(len(M)):
        if rank([M[j] for j in chosen] + [M[i]]) > len(chosen):
            chosen.append(i)
    return chosen


def primitive(v: Iterable[int]) -> list[int]:
    v = [int(x) for x in v]
    g = 0
    for x in v:
        g = np.gcd(g, abs(x))
    g = int(g)
    return [x // g for x in v] if g > 1 else v


# -- 4ti2-style text files ---------------------------------------------------

def format_matrix(A, cols: int | None = None) -> str:
    M = as_matrix(A)
    n = ncols(M, cols or 0)
    lines = [f"{len(M)} {n}"]
    lines += [" ".join(str(x) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix file needs a 'rows cols' header")
    m, n = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != m * n:
        raise ValueError(f"expected {m * n} entries, found {len(body)}")
    vals = [int(x) for x in body]
    return [vals[i * n:(i + 1) * n] for i in range(m)]


def write_matrix(path, A, cols: int | None = None) -> None:
    Path(path).write_text(format_matrix(A, cols))


def read_matrix(path) -> Matrix:
    return parse_matrix(Path(path).read_text())
