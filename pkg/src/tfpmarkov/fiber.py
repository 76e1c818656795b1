"""Exhaustive fibers, connectivity under a move set, bounded Markov checks.

The bounded check works degree by degree.  Suppose every fiber of total
degree below d is connected.  Then two tables of a degree-d fiber that share
a cell are connected (strip the common cell and use the smaller fiber).  So
a degree-d fiber is connected iff the "share a cell" components become one
after adding the edges given by the moves.  Most fibers are settled by the
cheap first step.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numba
import numpy as np

from . import exact
from .model import DesignMatrix

log = logging.getLogger(__name__)

DEFAULT_CAP = 5_000_000


class CapExceeded(RuntimeError):
    pass


def _as_array(B) -> np.ndarray:
    M = B.matrix if isinstance(B, DesignMatrix) else B
    M = np.ascontiguousarray(np.asarray(M, dtype=np.int64))
    if (M < 0).any():
        raise ValueError("fiber enumeration needs a non-negative matrix")
    if (M.sum(axis=0) == 0).any():
        raise ValueError("every column needs a positive entry, otherwise fibers are infinite")
    return M


# -- numba kernels ----------------------------------------------------------------

@numba.njit(cache=True)
def _enumerate(M, b, cap):
    """All t >= 0 with M t = b, lexicographically decreasing; -1 row count on cap."""
    m, n = M.shape
    last = np.full(m, -1, np.int64)
    for r in range(m):
        for x in range(n):
            if M[r, x] > 0:
                last[r] = x
    for r in range(m):
        if last[r] < 0 and b[r] != 0:
            return np.zeros((0, n), np.int64), 0
    size = min(64, cap)
    out = np.zeros((size, n), np.int64)
    count = 0
    rem = b.copy()
    t = np.zeros(n, np.int64)
    # value to try next at each cell; -1 means "compute the upper bound"
    nxt = np.full(n + 1, -1, np.int64)
    x = 0
    while x >= 0:
        if x == n:
            if count == size:
                if size >= cap:
                    return out, -1
                size = min(2 * size, cap)
                new = np.zeros((size, n), np.int64)
                new[:count] = out[:count]
                out = new
            out[count] = t
            count += 1
            x -= 1
            continue
        if nxt[x] < 0:
            ub = 1 << 60
            for r in range(m):
                if M[r, x] > 0:
                    q = rem[r] // M[r, x]
                    if q < ub:
                        ub = q
            # undo nothing yet: t[x] is 0 here
            nxt[x] = ub
        else:
            # retract the previous value of this cell
            v = t[x]
            for r in range(m):
                rem[r] += M[r, x] * v
            t[x] = 0
            nxt[x] -= 1
        v = nxt[x]
        if v < 0:
            nxt[x] = -1
            x -= 1
            continue
        ok = True
        for r in range(m):
            rem[r] -= M[r, x] * v
        t[x] = v
        for r in range(m):
            if last[r] == x and rem[r] != 0:
                ok = False
                break
        if ok:
            x += 1
        # when not ok we stay at x and the next pass retracts and decrements
    return out, count


@numba.njit(cache=True)
def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


@numba.njit(cache=True)
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


@numba.njit(cache=True)
def _share_components(T, parent):
    k, n = T.shape
    comps = k
    for x in range(n):
        first = -1
        for i in range(k):
            if T[i, x] > 0:
                if first < 0:
                    first = i
                elif _union(parent, first, i):
                    comps -= 1
    return comps


@numba.njit(cache=True)
def _hashes(T, w):
    k, n = T.shape
    h = np.zeros(k, np.uint64)
    for i in range(k):
        acc = np.uint64(1469598103934665603)
        for x in range(n):
            acc = acc * np.uint64(1099511628211) + np.uint64(T[i, x]) * w[x]
        h[i] = acc
    return h


@numba.njit(cache=True)
def _lookup(T, order, hs, target, th):
    lo, hi = 0, len(order)
    while lo < hi:
        mid = (lo + hi) // 2
        if hs[order[mid]] < th:
            lo = mid + 1
        else:
            hi = mid
    n = T.shape[1]
    while lo < len(order) and hs[order[lo]] == th:
        j = order[lo]
        same = True
        for x in range(n):
            if T[j, x] != target[x]:
                same = False
                break
        if same:
            return j
        lo += 1
    return -1


@numba.njit(cache=True)
def _move_components(T, parent, comps, moves, mdeg, deg, w):
    """Merge components along move edges; moves of degree > deg never apply."""
    k, n = T.shape
    hs = _hashes(T, w)
    order = np.argsort(hs)
    sh = hs[order]
    tgt = np.zeros(n, np.int64)
    for i in range(k):
        if comps == 1:
            break
        for s in range(moves.shape[0]):
            if mdeg[s] > deg:
                continue
            for sign in (1, -1):
                ok = True
                for x in range(n):
                    v = T[i, x] + sign * moves[s, x]
                    if v < 0:
                        ok = False
                        break
                    tgt[x] = v
                if not ok:
                    continue
                th = np.uint64(1469598103934665603)
                for x in range(n):
                    th = th * np.uint64(1099511628211) + np.uint64(tgt[x]) * w[x]
                j = _lookup(T, order, hs, tgt, th)
                if j >= 0 and _union(parent, i, j):
                    comps -= 1
    return comps


@numba.njit(cache=True)
def _check_margins(M, margins, moves, mdeg, deg, cap, w, use_share):
    """Connectivity of every fiber in ``margins``; returns (status, margin index).

    status 0: all connected; 1: disconnected fiber at index; 2: cap exceeded.
    """
    for q in range(margins.shape[0]):
        T, cnt = _enumerate(M, margins[q], cap)
        if cnt < 0:
            return 2, q
        if cnt <= 1:
            continue
        T = T[:cnt]
        parent = np.arange(cnt)
        comps = cnt
        if use_share:
            comps = _share_components(T, parent)
        if comps > 1:
            comps = _move_components(T, parent, comps, moves, mdeg, deg, w)
        if comps > 1:
            return 1, q
    return 0, -1


# -- public API ---------------------------------------------------------------------

@dataclass
class Fiber:
    design: np.ndarray
    margin: np.ndarray
    tables: np.ndarray

    def __len__(self) -> int:
        return len(self.tables)


@dataclass
class ConnectivityReport:
    component_count: int
    witness_disconnection: tuple | None = None
    max_degree_checked: int = 0
    components: np.ndarray | None = field(default=None, repr=False)

    @property
    def connected(self) -> bool:
        return self.component_count <= 1


def enumerate_fiber(B, b, cap: int = DEFAULT_CAP) -> Fiber:
    M = _as_array(B)
    b = np.asarray(b, dtype=np.int64)
    if b.shape != (M.shape[0],):
        raise ValueError("margin length differs from row count")
    if (b < 0).any():
        raise ValueError("margins are non-negative")
    T, cnt = _enumerate(M, b, int(cap))
    if cnt < 0:
        raise CapExceeded(f"fiber has more than {cap} tables")
    T = T[:cnt][::-1].copy()  # lexicographically increasing
    return Fiber(M, b, T)


def first_solution(M, b) -> np.ndarray | None:
    """Some t >= 0 with M t = b for a non-negative M, or None."""
    M = _as_array(M)
    T, cnt = _enumerate(M, np.asarray(b, dtype=np.int64), 1)
    return None if cnt == 0 else T[0].copy()


def _weights(n: int) -> np.ndarray:
    rng = np.random.default_rng(0x5EED)
    return rng.integers(1, 2**63, size=n, dtype=np.uint64) | np.uint64(1)


def _moves_array(moves, n: int) -> np.ndarray:
    A = np.asarray(moves, dtype=np.int64)
    return A.reshape(-1, n) if A.size else np.zeros((0, n), np.int64)


def is_connected(f: Fiber, moves, use_share: bool = False) -> ConnectivityReport:
    """Components of the fiber graph with edges ``t -- t+m``.

    ``use_share`` additionally joins tables that share a cell, which is only
    sound when all smaller fibers are already known to be connected.
    """
    T = np.ascontiguousarray(f.tables)
    k = len(T)
    if k == 0:
        return ConnectivityReport(0)
    n = T.shape[1]
    mv = _moves_array(moves, n)
    parent = np.arange(k)
    comps = _share_components(T, parent) if use_share else k
    # a move applies only if its positive part fits in some table
    deg = int(T.sum(axis=1).max())
    if comps > 1 and len(mv):
        mdeg = np.maximum(mv, 0).sum(axis=1)
        comps = _move_components(T, parent, comps, mv, mdeg, deg, _weights(n))
    roots = np.array([_find(parent, i) for i in range(k)])
    witness = None
    if comps > 1:
        a = 0
        b = int(np.flatnonzero(roots != roots[0])[0])
        witness = (T[a].copy(), T[b].copy())
    return ConnectivityReport(int(comps), witness, deg, roots)


def is_homogeneous(M) -> bool:
    """Is the all-ones vector a rational combination of the rows of M?"""
    M = np.asarray(M, dtype=np.int64)
    return exact.rank(M.tolist()) == exact.rank(M.tolist() + [[1] * M.shape[1]])


def margin_row_basis(M: np.ndarray) -> tuple[list[int], np.ndarray | None]:
    """Independent rows R of M and an integer C with M = C R (None if not integral)."""
    R = exact.row_basis(M)
    Rm = exact.as_matrix(M[R])
    # solve C R = M row by row: R^T c = m_row
    C = []
    for row in exact.as_matrix(M):
        c = exact.solve_integer(exact.transpose(Rm), row)
        if c is None:
            return R, None
        C.append(c)
    return R, np.array(C, dtype=np.int64)


def _margin_levels(M: np.ndarray, maxdeg: int):
    """Yield (d, n, decode) with decode(lo, hi) giving margins lo..hi-1 of degree d.

    Margins are held as packed keys in a row basis when they fit in 62 bits,
    so large levels are decoded one chunk at a time.
    """
    R, C = margin_row_basis(M)
    bits = max(1, int(maxdeg).bit_length())
    if C is None or len(R) * bits > 62:
        # fall back to whole-row keys
        cur = np.zeros((1, M.shape[0]), np.int64)
        for d in range(1, maxdeg + 1):
            cur = np.unique((cur[:, None, :] + M.T[None, :, :]).reshape(-1, M.shape[0]), axis=0)
            yield d, len(cur), (lambda lo, hi, cur=cur: cur[lo:hi])
        return
    shifts = bits * np.arange(len(R), dtype=np.int64)
    colkey = M[R].T @ (np.int64(1) << shifts)
    keys = np.zeros(1, np.int64)
    mask = (1 << bits) - 1

    def decode(lo, hi, keys=None):
        r = (keys[lo:hi, None] >> shifts[None, :]) & mask
        return np.ascontiguousarray(r @ C.T)

    for d in range(1, maxdeg + 1):
        acc = np.zeros(0, np.int64)
        chunk = max(1, 4_000_000 // len(colkey))
        for s in range(0, len(keys), chunk):
            part = np.unique((keys[s:s + chunk, None] + colkey[None, :]).ravel())
            acc = np.union1d(acc, part)
        keys = acc
        yield d, len(keys), (lambda lo, hi, keys=keys: decode(lo, hi, keys))


def margins_by_degree(M: np.ndarray, maxdeg: int):
    """Yield (d, array of distinct margins realised by degree-d tables)."""
    M = np.asarray(M, dtype=np.int64)
    for d, n, decode in _margin_levels(M, maxdeg):
        yield d, decode(0, n)


MARGIN_CHUNK = 1 << 20


@dataclass
class DegreeCheckReport:
    passed: bool
    maxdeg: int
    failed_degree: int | None = None
    witness_margin: np.ndarray | None = None
    witness: tuple | None = None
    fibers_checked: dict[int, int] = field(default_factory=dict)
    seconds: float = 0.0


def markov_degree_check(B, moves, maxdeg: int, cap: int = DEFAULT_CAP,
                        mindeg: int = 1) -> DegreeCheckReport:
    """Check that ``moves`` connect every fiber of total degree <= maxdeg.

    Fibers are visited degree by degree and the check stops at the first
    degree with a disconnected fiber (the cell-sharing shortcut relies on
    all smaller fibers being connected).
    """
    if maxdeg < 1:
        raise ValueError("maxdeg must be at least 1")
    M = _as_array(B)
    if not is_homogeneous(M):
        raise ValueError("degree check needs a design whose fibers have constant table total")
    n = M.shape[1]
    mv = _moves_array(moves, n)
    mdeg = np.maximum(mv, 0).sum(axis=1) if len(mv) else np.zeros(0, np.int64)
    w = _weights(n)
    t0 = time.time()
    rep = DegreeCheckReport(True, maxdeg)
    for d, count, decode in _margin_levels(M, maxdeg):
        rep.fibers_checked[d] = count
        if d < mindeg:
            continue
        status = 0
        for lo in range(0, count, MARGIN_CHUNK):
            margins = decode(lo, min(count, lo + MARGIN_CHUNK))
            status, q = _check_margins(M, margins, mv, mdeg, d, int(cap), w, True)
            if status:
                break
        log.info("degree %d: %d fibers, status %d (%.1fs)", d, count, status, time.time() - t0)
        if status == 2:
            raise CapExceeded(f"fiber with margin {margins[q].tolist()} exceeds cap {cap}")
        if status == 1:
            f = enumerate_fiber(M, margins[q], cap)
            conn = is_connected(f, mv, use_share=True)
            rep.passed = False
            rep.failed_degree = d
            rep.witness_margin = margins[q].copy()
            rep.witness = conn.witness_disconnection
            break
    rep.seconds = time.time() - t0
    return rep


def essential_degree(B, moves, maxdeg: int, cap: int = DEFAULT_CAP) -> tuple[int, list[DegreeCheckReport]]:
    """Smallest d such that the moves of degree <= d pass the check up to maxdeg.

    Returns ``(d, reports)``; ``d`` is 0 when no truncation passes.
    """
    mv = np.asarray(moves, dtype=np.int64)
    degs = sorted(set(np.maximum(mv, 0).sum(axis=1).tolist())) if mv.size else []
    reports = []
    for d in degs:
        sub = mv[np.maximum(mv, 0).sum(axis=1) <= d]
        rep = markov_degree_check(B, sub, maxdeg, cap)
        reports.append(rep)
        if rep.passed:
            return d, reports
    return 0, reports
