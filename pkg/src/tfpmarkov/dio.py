"""Minimal solutions of linear Diophantine systems with sign constraints.

The solver is a project-and-lift completion.  Start from a lattice basis of
``ker [A | -rhs]`` whose projection onto a set of pivot coordinates is a
bijection, take the conformally minimal elements of that projection, then
bring in the remaining coordinates one at a time.  When coordinate ``j`` is
added, new candidates are sums ``f + g`` of known elements with
``f_j > 0 > g_j``, generated in order of their norm on the coordinates
already lifted.  A candidate is kept unless some known element lies below it
in the conformal order.

Conformal order: ``u ⊑ v`` iff ``u_i v_i >= 0`` and ``|u_i| <= |v_i|`` for
every i.  On non-negative coordinates this is the componentwise order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numba
import numpy as np

from . import exact

log = logging.getLogger(__name__)

FREE, NONNEG = 0, 1
_SAFE = 1 << 40


def _sign_code(s) -> int:
    if s in (0, "free", "f"):
        return FREE
    if s in (1, "nonneg", "+", "hil"):
        return NONNEG
    raise ValueError(f"unknown sign constraint {s!r}")


@dataclass(frozen=True)
class DioSystem:
    A: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.signs)
        if len(self.rhs) != len(self.A):
            raise ValueError("rhs length must equal the number of rows")
        if any(len(r) != n for r in self.A):
            raise ValueError("signs length must equal the number of columns")

    @classmethod
    def make(cls, A, rhs=None, signs=None) -> "DioSystem":
        A = exact.as_matrix(A)
        n = exact.ncols(A)
        rhs = [0] * len(A) if rhs is None else [int(x) for x in rhs]
        signs = [NONNEG] * n if signs is None else [_sign_code(s) for s in signs]
        return cls(tuple(map(tuple, A)), tuple(rhs), tuple(signs))

    @property
    def cols(self) -> int:
        return len(self.signs)

    def satisfied_by(self, x) -> bool:
        x = [int(v) for v in x]
        if exact.matvec([list(r) for r in self.A], x) != list(self.rhs):
            return False
        return all(v >= 0 for v, s in zip(x, self.signs) if s == NONNEG)


@dataclass
class MinimalSolutionSet:
    inhomogeneous: list[tuple[int, ...]] = field(default_factory=list)
    homogeneous: list[tuple[int, ...]] = field(default_factory=list)


def conformally_below(u, v) -> bool:
    u, v = np.asarray(u), np.asarray(v)
    return bool(((u * v >= 0) & (np.abs(u) <= np.abs(v))).all())


# -- initial step for a non-unimodular projection --------------------------------

def _graver_full_rank(basis: list[list[int]]) -> list[list[int]]:
    """Conformally minimal non-zero elements of a full-rank lattice in Z^d.

    Pottier-style completion: close a symmetric generating set under sums,
    reducing each sum by known elements below it in the conformal order.
    """
    G: list[np.ndarray] = []
    for b in basis:
        G += [np.array(b, dtype=object), -np.array(b, dtype=object)]

    def normal_form(s):
        changed = True
        while changed and any(s):
            changed = False
            for h in G:
                if conformally_below(h, s):
                    s = s - h
                    changed = True
                    break
        return s

    pairs = [(i, j) for i in range(len(G)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        s = normal_form(G[i] + G[j])
        if any(s):
            G.append(s)
            pairs += [(len(G) - 1, k) for k in range(len(G) - 1)]
    out = []
    for g in G:
        if not any(g):
            continue
        if any(h is not g and any(h) and conformally_below(h, g) and not np.array_equal(h, g) for h in G):
            continue
        t = [int(x) for x in g]
        if t not in out:
            out.append(t)
    return out


def _initial_set(K: list[list[int]], tau: list[int], restricted: np.ndarray) -> list[list[int]]:
    """Feasible conformally minimal elements of the projection onto tau, lifted to L."""
    d = len(K)
    if all(K[i][tau[i]] == 1 for i in range(d)):
        proj = [[int(i == j) for j in range(d)] for i in range(d)]
        lifted = [list(r) for r in K]
        cand = []
        for i in range(d):
            cand.append(lifted[i])
            cand.append([-x for x in lifted[i]])
    else:
        proj = [[K[i][t] for t in tau] for i in range(d)]
        cand = []
        for lam in _graver_full_rank(proj):
            c = exact.solve_integer(exact.transpose(proj), lam)
            cand.append([sum(c[i] * K[i][j] for i in range(d)) for j in range(len(K[0]))])
    return [v for v in cand if all(v[t] >= 0 or not restricted[t] for t in tau)]


# -- main completion ---------------------------------------------------------------

def project_and_lift(K, restricted: Sequence[bool], upper: dict[int, int] | None = None,
                     first: Sequence[int] = ()) -> np.ndarray:
    """Conformally minimal non-zero elements of the lattice spanned by ``K``
    subject to ``x_i >= 0`` for restricted ``i`` and ``x_i <= upper[i]``.

    ``first`` lists coordinates that should become pivots if possible.
    """
    K = exact.as_matrix(K)
    n = exact.ncols(K, len(restricted))
    restricted = np.asarray(restricted, dtype=bool)
    if not K:
        return np.zeros((0, n), dtype=np.int64)
    try:
        return _project_and_lift(K, restricted, upper or {}, first, np.int64)
    except OverflowError:
        log.info("entries left the safe int64 range; recomputing with Python integers")
        return _project_and_lift(K, restricted, upper or {}, first, object)


def _project_and_lift(K, restricted, upper, first, dtype) -> np.ndarray:
    n = len(K[0])
    order = list(first) + [j for j in range(n) if j not in first]
    H, _ = exact.hnf([[row[j] for j in order] for row in K])
    H = [r for r in H if any(r)]
    tau = [order[p] for p in exact.pivots(H)]
    Kb = [[0] * n for _ in H]
    for i, row in enumerate(H):
        for p, x in enumerate(row):
            Kb[i][order[p]] = x

    G = np.array(_initial_set(Kb, tau, restricted), dtype=dtype).reshape(-1, n)
    lifted = np.zeros(n, dtype=bool)
    lifted[tau] = True

    def prune(G):
        keep = ~((G < 0) & restricted & lifted).any(axis=1)
        for c, u in upper.items():
            if lifted[c]:
                keep &= G[:, c] <= u
        return G[keep]

    G = prune(G)
    for j in [j for j in order if not lifted[j]]:
        old = lifted.copy()
        lifted[j] = True
        if dtype is np.int64:
            G, ok = _lift_kernel(np.ascontiguousarray(G), old, restricted & old, j, _SAFE)
            if not ok:
                raise OverflowError
        else:
            G = _lift_python(G, old, lifted, restricted, j)
        G = prune(G)
        log.debug("lifted coordinate %d: %d elements", j, len(G))
    return _strictly_minimal(G)


def _strictly_minimal(G: np.ndarray) -> np.ndarray:
    keep = []
    for k in range(len(G)):
        below = ((G * G[k] >= 0) & (np.abs(G) <= np.abs(G[k]))).all(axis=1)
        below &= (G != G[k]).any(axis=1)
        if not below.any():
            keep.append(k)
    return G[keep]


def _lift_python(G, old, lifted, restricted, j):
    free_old = old & ~restricted
    level = 1
    while True:
        P, N = G[G[:, j] > 0], G[G[:, j] < 0]
        if len(P) == 0 or len(N) == 0:
            break
        Pn = np.abs(P[:, old]).sum(axis=1)
        Nn = np.abs(N[:, old]).sum(axis=1)
        if level > Pn.max() + Nn.max():
            break
        found = []
        for a in range(len(P)):
            sel = Nn == level - Pn[a]
            if not sel.any():
                continue
            S = P[a] + N[sel]
            if free_old.any():
                S = S[((P[a][free_old] * N[sel][:, free_old]) >= 0).all(axis=1)]
            found.append(S)
        if found:
            S = np.vstack(found)
            S = S[S.any(axis=1)]
            GL = G[:, lifted]
            keep = []
            for s in S:
                sl = s[lifted]
                if ((GL * sl >= 0) & (np.abs(GL) <= np.abs(sl))).all(axis=1).any():
                    continue
                keep.append(s)
                GL = np.vstack([GL, sl[None]])
            if keep:
                G = np.vstack([G, np.array(keep, dtype=G.dtype)])
        level += 1
    return G


@numba.njit(cache=True)
def _lift_kernel(G0, old, restricted_old, j, safe):
    """One lifting step in int64; returns (elements, ok) with ok False on overflow risk."""
    n = G0.shape[1]
    cap = max(64, 2 * G0.shape[0])
    G = np.zeros((cap, n), np.int64)
    G[:G0.shape[0]] = G0
    size = G0.shape[0]
    norm = np.zeros(cap, np.int64)
    for k in range(size):
        for c in range(n):
            if old[c]:
                norm[k] += abs(G[k, c])
    s = np.zeros(n, np.int64)
    level = 1
    while True:
        pmax = -1
        nmax = -1
        for k in range(size):
            if G[k, j] > 0 and norm[k] > pmax:
                pmax = norm[k]
            elif G[k, j] < 0 and norm[k] > nmax:
                nmax = norm[k]
        if pmax < 0 or nmax < 0 or level > pmax + nmax:
            break
        frozen = size
        for a in range(frozen):
            if G[a, j] <= 0 or norm[a] >= level:
                continue
            for b in range(frozen):
                if G[b, j] >= 0 or norm[a] + norm[b] != level:
                    continue
                compatible = True
                for c in range(n):
                    if old[c] and not restricted_old[c] and G[a, c] * G[b, c] < 0:
                        compatible = False
                        break
                if not compatible:
                    continue
                nz = False
                for c in range(n):
                    s[c] = G[a, c] + G[b, c]
                    if abs(s[c]) > safe:
                        return G[:size], False
                    if s[c] != 0:
                        nz = True
                if not nz:
                    continue
                reducible = False
                for k in range(size):
                    below = True
                    for c in range(n):
                        if old[c] or c == j:
                            g = G[k, c]
                            if g * s[c] < 0 or abs(g) > abs(s[c]):
                                below = False
                                break
                    if below:
                        reducible = True
                        break
                if reducible:
                    continue
                if size == cap:
                    cap *= 2
                    G2 = np.zeros((cap, n), np.int64)
                    G2[:size] = G[:size]
                    G = G2
                    nrm2 = np.zeros(cap, np.int64)
                    nrm2[:size] = norm[:size]
                    norm = nrm2
                G[size] = s
                nv = 0
                for c in range(n):
                    if old[c]:
                        nv += abs(s[c])
                norm[size] = nv
                size += 1
        level += 1
    return G[:size].copy(), True


def _sorted(rows) -> list[tuple[int, ...]]:
    return sorted({tuple(int(x) for x in r) for r in rows})


def minimal_homogeneous(system: DioSystem) -> MinimalSolutionSet:
    if any(system.rhs):
        raise ValueError("minimal_homogeneous needs a zero right-hand side")
    A = [list(r) for r in system.A]
    K = exact.kernel_lattice(A, system.cols).matrix()
    G = project_and_lift(K, [s == NONNEG for s in system.signs])
    return MinimalSolutionSet([], _sorted(G))


def minimal_inhomogeneous(system: DioSystem) -> MinimalSolutionSet:
    """Minimal solutions of ``A x = rhs`` and minimal non-zero ones of ``A x = 0``."""
    n = system.cols
    if not any(system.rhs):
        hom = minimal_homogeneous(system).homogeneous
        return MinimalSolutionSet([tuple([0] * n)], hom)
    # homogenize: A x - rhs t = 0 with 0 <= t <= 1, t placed first
    A = [[-b] + list(r) for r, b in zip(system.A, system.rhs)]
    K = exact.kernel_lattice(A, n + 1).matrix()
    restricted = [True] + [s == NONNEG for s in system.signs]
    G = project_and_lift(K, restricted, upper={0: 1}, first=(0,))
    inhom = [r[1:] for r in G if r[0] == 1]
    hom = [r[1:] for r in G if r[0] == 0]
    return MinimalSolutionSet(_sorted(inhom), _sorted(hom))


# -- 4ti2-style files --------------------------------------------------------------

def write_system(stem, system: DioSystem) -> None:
    stem = str(stem)
    exact.write_matrix(stem + ".mat", [list(r) for r in system.A], system.cols)
    exact.write_matrix(stem + ".rhs", [list(system.rhs)], len(system.rhs))
    exact.write_matrix(stem + ".sign", [list(system.signs)], system.cols)


def read_system(stem) -> DioSystem:
    stem = str(stem)
    A = exact.read_matrix(stem + ".mat")
    rhs = exact.read_matrix(stem + ".rhs")[0] if Path(stem + ".rhs").exists() else None
    signs = exact.read_matrix(stem + ".sign")[0] if Path(stem + ".sign").exists() else None
    return DioSystem.make(A, rhs, signs)


def write_solutions(stem, sols: MinimalSolutionSet, cols: int) -> None:
    stem = str(stem)
    exact.write_matrix(stem + ".zinhom", [list(v) for v in sols.inhomogeneous], cols)
    exact.write_matrix(stem + ".zhom", [list(v) for v in sols.homogeneous], cols)
