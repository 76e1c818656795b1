"""Markov bases of lattices by project-and-lift, and their minimization.

Computation.  Start from an HNF basis of the lattice L whose pivots are
units, so the projection onto the pivot set is all of Z^d and the basis
itself generates every fiber there.  The other coordinates become
sign-restricted one at a time.  For coordinate i, first look for a lattice
vector with ``l_i > 0`` that is non-negative on the restricted coordinates
(an exact LP).  If one exists it is appended and nothing else changes.
Otherwise a Gröbner basis is completed for the order that first minimizes
``-x_i`` and breaks ties by degrevlex on the restricted coordinates.

Minimization.  Moves are processed by ascending degree (for designs whose
row space misses the all-ones vector, by a positive grading taken from the
row space instead).  When all fibers of degree below d are connected, the
degree-d fiber of a margin b splits into the classes of "tables sharing a
cell", and each degree-d move is one edge between two of them.  Keeping a move exactly when it joins two classes not
already joined gives a minimal Markov basis.
"""

from __future__ import annotations

import heapq
import logging
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterable

import numpy as np
import sympy as sp
from sympy.solvers.simplex import lpmax, lpmin

from . import exact, fiber
from .model import DesignMatrix
from .notation import canonical_sign

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Move:
    vector: tuple[int, ...]

    @classmethod
    def of(cls, v) -> "Move":
        return cls(tuple(int(x) for x in canonical_sign(v)))

    @property
    def degree(self) -> int:
        return sum(x for x in self.vector if x > 0)

    @property
    def positive(self) -> np.ndarray:
        return np.maximum(np.array(self.vector, dtype=np.int64), 0)

    @property
    def negative(self) -> np.ndarray:
        return np.maximum(-np.array(self.vector, dtype=np.int64), 0)


class MoveSet:
    """Sign-canonical, duplicate-free moves sorted by (degree, vector)."""

    def __init__(self, moves: Iterable = (), dim: int | None = None):
        vecs = {Move.of(v) for v in moves if np.any(v)}
        self.moves = sorted(vecs, key=lambda m: (m.degree, m.vector))
        if dim is None:
            dim = len(self.moves[0].vector) if self.moves else 0
        self.dim = dim

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __contains__(self, v) -> bool:
        return Move.of(v) in set(self.moves)

    def array(self) -> np.ndarray:
        if not self.moves:
            return np.zeros((0, self.dim), dtype=np.int64)
        return np.array([m.vector for m in self.moves], dtype=np.int64)

    def degrees(self) -> Counter:
        return Counter(m.degree for m in self.moves)

    def max_degree(self) -> int:
        return max((m.degree for m in self.moves), default=0)

    def truncate(self, d: int) -> "MoveSet":
        return MoveSet([m.vector for m in self.moves if m.degree <= d], self.dim)

    def as_set(self) -> set[tuple[int, ...]]:
        return {m.vector for m in self.moves}


def degree_stats(moves) -> dict[int, int]:
    ms = moves if isinstance(moves, MoveSet) else MoveSet(moves)
    return dict(sorted(ms.degrees().items()))


# -- project-and-lift -----------------------------------------------------------------

def _ray(K: list[list[int]], restricted: list[int], i: int) -> np.ndarray | None:
    """Integer l in span(K) with l_i > 0 and l >= 0 on ``restricted``, if any."""
    d = len(K)
    c = sp.symbols(f"c0:{d}")
    n = len(K[0])
    l = [sum(c[k] * K[k][j] for k in range(d) if K[k][j]) for j in range(n)]
    cons = [l[j] >= 0 for j in restricted if l[j] != 0] + [l[i] <= 1]
    val, sol = lpmax(l[i], cons)
    if val <= 0:
        return None
    cv = [sp.Rational(sol.get(x, 0)) for x in c]
    den = lcm(*[int(x.q) for x in cv])
    v = [int(sum(cv[k] * den * K[k][j] for k in range(d))) for j in range(n)]
    return np.array(exact.primitive(v), dtype=np.int64)


def _degrevlex_gt(a: np.ndarray, b: np.ndarray) -> bool:
    sa, sb = a.sum(), b.sum()
    if sa != sb:
        return sa > sb
    nz = np.flatnonzero(a - b)
    return bool(len(nz)) and (a - b)[nz[-1]] < 0


def _orient(u: np.ndarray, S: np.ndarray, i: int) -> np.ndarray:
    # orient so that u+ is the leading (larger) side
    if u[i] != 0:
        return u if u[i] < 0 else -u
    up, um = np.maximum(u[S], 0), np.maximum(-u[S], 0)
    return u if _degrevlex_gt(up, um) else -u


def _groebner(G: list[np.ndarray], S: np.ndarray, i: int) -> list[np.ndarray]:
    """Reduced-lead generating set for the order on coordinates S + {i}."""
    lead = lambda g: np.maximum(g[S], 0)
    Gl: list[np.ndarray] = []
    L: list[np.ndarray] = []
    Lm = np.zeros((0, len(S)), dtype=np.int64)

    def reduce(u):
        while u.any():
            u = _orient(u, S, i)
            a = lead(u)
            hit = np.flatnonzero((Lm <= a).all(axis=1)) if len(L) else []
            if len(hit) == 0:
                return u
            u = u - Gl[hit[0]]
        return u

    pairs: list = []

    def add(g):
        nonlocal Lm
        g = _orient(g, S, i)
        Gl.append(g)
        L.append(lead(g))
        Lm = np.vstack([Lm, L[-1][None]])
        j = len(Gl) - 1
        for k in range(j):
            # Buchberger's first criterion: coprime leads need no S-vector
            if np.minimum(L[k], L[j]).any():
                heapq.heappush(pairs, (int(np.maximum(L[k], L[j]).sum()), k, j))

    for g in G:
        r = reduce(g)
        if r.any():
            add(r)
    while pairs:
        _, a, b = heapq.heappop(pairs)
        r = reduce(Gl[a] - Gl[b])
        if r.any():
            add(r)
    keep = []
    for k in range(len(Gl)):
        div = (Lm <= L[k]).all(axis=1)
        div[k] = False
        same = (Lm == L[k]).all(axis=1)
        same[k] = False
        if (div & ~same).any() or same[:k].any():
            continue
        keep.append(Gl[k])
    return keep


def lattice_markov_basis(L, trace: bool = False) -> np.ndarray:
    """A Markov basis (not minimized) of the lattice generated by the rows of ``L``."""
    if isinstance(L, exact.LatticeBasis):
        K = L.matrix()
    else:
        K = exact.as_matrix(L)
    if not K:
        return np.zeros((0, 0), dtype=np.int64)
    n = len(K[0])
    H, _ = exact.hnf(K)
    H = [r for r in H if any(r)]
    if not H:
        return np.zeros((0, n), dtype=np.int64)
    tau = exact.pivots(H)
    if any(H[k][tau[k]] != 1 for k in range(len(H))):
        raise ValueError("lattice has no unit-pivot echelon basis; project-and-lift start unavailable")
    G = [np.array(r, dtype=np.int64) for r in H]
    restricted = list(tau)
    for i in range(n):
        if i in restricted:
            continue
        t0 = time.time()
        l = _ray(H, restricted, i)
        if l is not None:
            G.append(l)
            how = "ray"
        else:
            G = _groebner(G, np.array(sorted(restricted)), i)
            how = "groebner"
        restricted.append(i)
        msg = "coordinate %d by %s: %d elements (%.2fs)"
        (log.info if trace else log.debug)(msg, i, how, len(G), time.time() - t0)
    return np.array([canonical_sign(g) for g in G], dtype=np.int64).reshape(-1, n)


# -- minimization -----------------------------------------------------------------------

def grading_matrix(L) -> np.ndarray:
    """Non-negative integer matrix A whose rational kernel is span(L).

    Needs a strictly positive vector orthogonal to L, i.e. fibers must be
    finite; raises ValueError otherwise.
    """
    K = L.matrix() if isinstance(L, exact.LatticeBasis) else exact.as_matrix(L)
    n = len(K[0])
    Y = exact.kernel_lattice(K, n).matrix() if K else exact.identity(n)
    if not Y:
        raise ValueError("lattice has full rank, fibers are infinite")
    c = sp.symbols(f"c0:{len(Y)}")
    w = [sum(c[k] * Y[k][j] for k in range(len(Y)) if Y[k][j]) for j in range(n)]
    try:
        _, sol = lpmin(sum(w), [x >= 1 for x in w])
    except Exception as exc:  # infeasible
        raise ValueError("no positive grading: fibers are infinite") from exc
    cv = [sp.Rational(sol.get(x, 0)) for x in c]
    den = lcm(*[int(x.q) for x in cv])
    wv = np.array([int(sum(cv[k] * den * Y[k][j] for k in range(len(Y)))) for j in range(n)], dtype=np.int64)
    rows = [wv]
    for y in Y:
        y = np.array(y, dtype=np.int64)
        s = 0
        while ((y + s * wv) < 0).any():
            s += 1
        rows.append(y + s * wv)
    return np.array(rows, dtype=np.int64)


def positive_grading(M) -> np.ndarray:
    """A strictly positive integer vector in the row space of M (all ones if possible)."""
    M = np.asarray(M, dtype=np.int64)
    if fiber.is_homogeneous(M):
        return np.ones(M.shape[1], dtype=np.int64)
    y = sp.symbols(f"y0:{M.shape[0]}")
    w = [sum(int(M[i, j]) * y[i] for i in range(M.shape[0]) if M[i, j]) for j in range(M.shape[1])]
    if any(x == 0 for x in w):
        raise ValueError("a zero column: fibers are infinite")
    try:
        _, sol = lpmin(sum(w), [x >= 1 for x in w])
    except Exception as exc:
        raise ValueError("no positive grading: fibers are infinite") from exc
    yv = [sp.Rational(sol.get(v, 0)) for v in y]
    den = lcm(*[int(v.q) for v in yv])
    return np.array([int(sum(yv[i] * den * int(M[i, j]) for i in range(M.shape[0])))
                     for j in range(M.shape[1])], dtype=np.int64)


def minimize(moves, A, priority: Callable[[tuple[int, ...]], int] | None = None,
             cap: int = fiber.DEFAULT_CAP) -> MoveSet:
    """Minimal Markov sub-basis of a Markov basis ``moves`` for design ``A``.

    Groups (margins) are visited by the value of a positive grading on the
    fiber, so every smaller margin comes first.  Within a margin, moves are
    tried by ``(priority, vector)``;
    moves tried later are the ones dropped when redundant.  ``A`` must be
    non-negative (a design matrix or the output of ``grading_matrix``).
    """
    M = A.matrix if isinstance(A, DesignMatrix) else np.asarray(A, dtype=np.int64)
    ms = MoveSet(moves, M.shape[1])
    prio = priority or (lambda v: 0)
    w = positive_grading(M)
    groups: dict[tuple, list[Move]] = defaultdict(list)
    for m in ms:
        b = M @ m.positive
        if not np.array_equal(b, M @ m.negative):
            raise ValueError(f"{m.vector} is not in the kernel of the design")
        # w . m+ is constant on the fiber and drops for every smaller margin
        groups[(int(w @ m.positive), tuple(b.tolist()))].append(m)
    kept = []
    for key in sorted(groups):
        cand = sorted(groups[key], key=lambda m: (prio(m.vector), m.vector))
        f = fiber.enumerate_fiber(M, np.array(key[1]), cap)
        conn = fiber.is_connected(f, np.zeros((0, M.shape[1]), np.int64), use_share=True)
        where = {tuple(t.tolist()): k for k, t in enumerate(f.tables)}
        parent = {}
        root = lambda r: r if parent.get(r, r) == r else root(parent[r])
        for m in cand:
            a = root(int(conn.components[where[tuple(m.positive.tolist())]]))
            b = root(int(conn.components[where[tuple(m.negative.tolist())]]))
            if a != b:
                parent[max(a, b)] = min(a, b)
                kept.append(m.vector)
    return MoveSet(kept, M.shape[1])


def markov_basis(B, minimal: bool = True, trace: bool = False) -> MoveSet:
    """Markov basis of the integer kernel of a design matrix."""
    M = B.matrix if isinstance(B, DesignMatrix) else np.asarray(B, dtype=np.int64)
    K = exact.kernel_lattice(M, M.shape[1])
    G = lattice_markov_basis(K, trace=trace)
    return minimize(G, M) if minimal else MoveSet(G, M.shape[1])


def is_markov_basis(B, moves, maxdeg: int, cap: int = fiber.DEFAULT_CAP) -> bool:
    return fiber.markov_degree_check(B, moves, maxdeg, cap).passed


# -- files --------------------------------------------------------------------------------

def write_moves(path, moves) -> None:
    ms = moves if isinstance(moves, MoveSet) else MoveSet(moves)
    exact.write_matrix(path, ms.array().tolist(), ms.dim)


def read_moves(path) -> MoveSet:
    A = exact.read_matrix(path)
    return MoveSet(A, len(A[0]) if A else 0)
