"""K_{3,N} as a toric fiber product of N three-stars over the triangle margin.

Coordinates.  A three-star state is (x1, x2, x3, x4) with x4 the centre; a
K_{3,N} state is (x1, x2, x3, y1, ..., yN).  Both use the binary index
sum x_i 2^(i-1), so the triangle part (x1, x2, x3) is the low three bits and
the triangle projection of a three-star vector m is ``m[:8] + m[8:]``.

Projected fibers.  Fix the star margins of a K4-tilde table.  The possible
triangle margins y form a projected fiber; four coordinates
u = (y000, y001, y010, y100) determine y through affine relations.  The
marginal-cone facets and the two hole-separating functionals become
inequalities D' u >= c'.

Lifts and glues.  A lift of a projected move g is a three-star move with
zero star margins projecting to g.  Gluing one lift per factor by matching
rows with equal triangle part gives a K_{3,N} move.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from . import cone, dio, exact, fiber, holes, markov, model, notation
from .markov import MoveSet

log = logging.getLogger(__name__)

# reduced coordinates (node-order names) and the triangle state names
U_NAMES = ("000", "001", "010", "100")
TRIANGLE = tuple(notation.row_string(i, 3) for i in range(8))
LIFTING_DEFECT = 2


def y_index(name: str) -> int:
    """Position of the triangle coordinate y_name (name in node order)."""
    return notation.row_index(name)


def degree_bound(N: int) -> int:
    if N < 1:
        raise ValueError("N must be at least 1")
    return min(4 + 2 * N, 12)


# -- affine relations between y and u ----------------------------------------------

def _jacobian() -> np.ndarray:
    """8x4 matrix J with y = J u + (terms in the star margins)."""
    J = np.zeros((8, 4), dtype=np.int64)
    for k, nm in enumerate(U_NAMES):
        J[y_index(nm), k] = 1
    J[y_index("011")] = (-1, -1, -1, 0)
    J[y_index("101")] = (-1, -1, 0, -1)
    J[y_index("110")] = (-1, 0, -1, -1)
    J[y_index("111")] = (2, 1, 1, 1)
    return J


def one_margins(y) -> dict[tuple[int, int], int]:
    """y^i_j: total of y over triangle states whose i-th entry is j."""
    y = np.asarray(y)
    out = {}
    for i in range(3):
        for j in (0, 1):
            out[(i + 1, j)] = int(sum(y[t] for t in range(8) if (t >> i) & 1 == j))
    return out


def y_offset(total: int, ym: dict) -> np.ndarray:
    """Constant part of the relations: y = J u + y_offset."""
    c = np.zeros(8, dtype=np.int64)
    c[y_index("011")] = ym[(1, 0)]
    c[y_index("101")] = ym[(2, 0)]
    c[y_index("110")] = ym[(3, 0)]
    c[y_index("111")] = total - ym[(1, 0)] - ym[(2, 0)] - ym[(3, 0)]
    return c


def relations_hold(y) -> bool:
    y = np.asarray(y, dtype=np.int64)
    u = y[[y_index(n) for n in U_NAMES]]
    ym = one_margins(y)
    return bool(np.array_equal(_jacobian() @ u + y_offset(int(y.sum()), ym), y))


def y_of_u(u, total: int, ym: dict) -> np.ndarray:
    return _jacobian() @ np.asarray(u, dtype=np.int64) + y_offset(total, ym)


def u_of_y(y) -> np.ndarray:
    y = np.asarray(y, dtype=np.int64)
    return y[[y_index(n) for n in U_NAMES]]


# -- the projected fiber system -------------------------------------------------------

@dataclass
class ProjectedFiberSystem:
    D: np.ndarray                      # rows in u, first four the unit matrix
    augmented_rows: np.ndarray         # l1, l2 in u
    facet_rows: list[list[int]]        # K4-tilde facets behind each row of D
    facets: list[tuple[int, ...]]      # facet normals in margin coordinates
    functionals: tuple[np.ndarray, np.ndarray]  # l1, l2 in margin coordinates
    families: list = field(default_factory=list, repr=False)
    design: model.DesignMatrix | None = field(default=None, repr=False)

    @property
    def D_prime(self) -> np.ndarray:
        return np.vstack([self.D, self.augmented_rows])

    def star_rows(self) -> list[int]:
        return holes.projection_rows(self.design)

    def margin_parts(self, p) -> tuple[int, dict]:
        """Total and triangle one-margins determined by star margins p."""
        p = np.asarray(p, dtype=np.int64)
        B = self.design
        rows = self.star_rows()
        lab = [B.row_labels[r] for r in rows]
        total = int(sum(x for (F, s), x in zip(lab, p) if F == (1, 4)))
        ym = {}
        for i in (1, 2, 3):
            for j in (0, 1):
                ym[(i, j)] = int(sum(x for (F, s), x in zip(lab, p) if F == (i, 4) and s[0] == j))
        return total, ym

    def rhs(self, p) -> np.ndarray:
        """c' for the projected fiber with star margins p."""
        p = np.asarray(p, dtype=np.int64)
        total, ym = self.margin_parts(p)
        off = y_offset(total, ym)
        rows = self.star_rows()
        full = np.zeros(self.design.matrix.shape[0], dtype=np.int64)
        full[rows] = p
        tri = [r for r in range(len(full)) if r not in rows]
        c = []
        for fr in self.facet_rows:
            # F . (y, p) >= 0 with y = J u + off; the constant is the best bound
            vals = []
            for fi in fr:
                f = np.asarray(self.facets[fi])
                vals.append(-(int(f[tri] @ off) + int(f[rows] @ p)))
            c.append(max(vals))
        for k, l in enumerate(self.functionals):
            # family k+1 has functional l_{2-k}; it is zero on that family's hole
            lu_const = int(l[tri] @ off)
            need = 1 if self._has_hole(1 - k, p) else 0
            c.append(need - lu_const)
        return np.array(c, dtype=np.int64)

    def _has_hole(self, fam_index: int, p) -> bool:
        fam = self.families[fam_index]
        rows = self.star_rows()
        M = self.design.matrix
        A = M[rows][:, list(fam.directions)]
        rhs = np.asarray(p) - np.asarray(fam.base.vector)[rows]
        lam = exact.solve_integer(A.tolist(), rhs.tolist())
        return lam is not None and min(lam) >= 0 and np.array_equal(A @ np.array(lam), rhs)

    def solutions(self, p) -> list[np.ndarray]:
        """Integer u with D' u >= c'(p), mapped to triangle margins y."""
        total, ym = self.margin_parts(p)
        c = self.rhs(p)
        Dp = self.D_prime
        out = []
        for u in itertools.product(range(total + 1), repeat=4):
            if (Dp @ np.array(u) >= c).all():
                out.append(y_of_u(u, total, ym))
        return out


def projected_fiber(B: model.DesignMatrix, p) -> list[np.ndarray]:
    """Triangle margins of the tables with star margins p (exhaustive)."""
    rows = holes.projection_rows(B)
    f = fiber.enumerate_fiber(B.matrix[rows], np.asarray(p))
    seen = {tuple(int(x) for x in (t[:8] + t[8:])) for t in f.tables}
    return [np.array(y) for y in sorted(seen)]


@lru_cache(maxsize=1)
def projected_fiber_system() -> ProjectedFiberSystem:
    B = model.named_design("k4tilde")
    ctx = holes.HoleContext(B)
    fams = holes.hole_families(B, ctx)
    fs = ctx.facets
    rows = holes.projection_rows(B)
    tri = [r for r in range(B.matrix.shape[0]) if r not in rows]
    J = _jacobian()
    by_u: dict[tuple, list[int]] = {}
    for fi, f in enumerate(fs.inequalities):
        d = tuple(int(x) for x in np.asarray(f)[tri] @ J)
        if any(d):
            by_u.setdefault(d, []).append(fi)
    unit = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    missing = [e for e in unit if e not in by_u]
    if missing:
        raise AssertionError(f"unit rows {missing} not among the transported facets")
    order = unit + sorted((d for d in by_u if d not in unit), key=lambda d: (sum(map(abs, d)), [-x for x in d]))
    D = np.array(order, dtype=np.int64)
    l1 = np.zeros(B.matrix.shape[0], dtype=np.int64)
    l2 = np.zeros(B.matrix.shape[0], dtype=np.int64)
    for (F, s), r in B.row_index.items():
        if F == (1, 2, 3):
            (l1 if sum(s) % 2 == 0 else l2)[r] = 1
    aug = np.array([l1[tri] @ J, l2[tri] @ J], dtype=np.int64)
    return ProjectedFiberSystem(D, aug, [by_u[d] for d in order], list(fs.inequalities), (l1, l2), fams, B)


# -- PF Markov basis --------------------------------------------------------------------

def pf_move_from_u(du) -> np.ndarray:
    """Triangle move (in Z^8) with reduced part du; one-margins stay fixed."""
    return _jacobian() @ np.asarray(du, dtype=np.int64)


def pf_markov_basis(sys: ProjectedFiberSystem | None = None) -> MoveSet:
    sys = sys or projected_fiber_system()
    Dp = sys.D_prime
    L = Dp.T.tolist()  # lattice spanned by the columns of D'
    G = markov.lattice_markov_basis(L)
    G = markov.minimize(G, markov.grading_matrix(L))
    return MoveSet([pf_move_from_u(m[:4]) for m in G.array()], 8)


PF_SHAPES = (
    (("00a", "11b"), ("01a", "10b")),
    (("000", "001", "110", "111"), ("010", "011", "100", "101")),
    (("000", "011", "101", "110"), ("001", "010", "100", "111")),
)


def _permute_rows(rows, perm) -> tuple[str, ...]:
    return tuple("".join(r[p] for p in perm) for r in rows)


def pf_orbit_decomposition() -> list[MoveSet]:
    """The three displayed shapes expanded over parameters and column permutations."""
    out = []
    for pos, neg in PF_SHAPES:
        moves = []
        for perm in itertools.permutations(range(3)):
            moves += notation.expand_family(_permute_rows(pos, perm), _permute_rows(neg, perm))
        out.append(MoveSet(moves, 8))
    return out


# -- lifts --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Lift:
    pf_move: tuple[int, ...]
    vector: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(x for x in self.vector if x > 0)

    def excess(self) -> np.ndarray:
        """xi(m+) - g+ as a length-8 vector."""
        v = np.asarray(self.vector)
        mp = np.maximum(v, 0)
        return mp[:8] + mp[8:] - np.maximum(np.asarray(self.pf_move), 0)


def triangle_projection(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    k = len(v) // 8
    return v.reshape(k, 8).sum(axis=0)


def lift_equations_hold(l: Lift) -> bool:
    S = model.named_design("three-star").matrix
    v = np.asarray(l.vector)
    return not (S @ v).any() and np.array_equal(triangle_projection(v), l.pf_move)


@lru_cache(maxsize=64)
def _lifts_cached(g: tuple[int, ...]) -> tuple[Lift, ...]:
    S = model.named_design("three-star").matrix
    Bk = model.named_design("k4tilde").matrix
    P = np.hstack([np.eye(8, dtype=np.int64)] * 2)
    A = np.vstack([S, P])
    rhs = [0] * S.shape[0] + list(g)
    sols = dio.minimal_inhomogeneous(dio.DioSystem.make(A, rhs, ["free"] * 16)).inhomogeneous
    if not sols:
        raise ValueError(f"{g} has no lift (not a projected-fiber move)")
    by_margin: dict[tuple, list[tuple]] = {}
    for m in sols:
        b = tuple(int(x) for x in Bk @ np.maximum(-np.asarray(m), 0))
        by_margin.setdefault(b, []).append(tuple(m))
    Bg = cone.ConeGenerators.columns(Bk)
    keys = list(by_margin)

    def below(c, b):
        d = np.subtract(b, c)
        return (d >= 0).all() and bool(cone.semigroup_member(Bg, d))

    minimal = [b for b in keys if not any(c != b and below(c, b) for c in keys)]
    out = [Lift(g, min(by_margin[b])) for b in minimal]
    return tuple(sorted(out, key=lambda l: (l.degree, l.vector)))


def lifts(g) -> list[Lift]:
    """Lifts of a projected move g: one per semigroup-minimal negative margin.

    Candidates are the conformally minimal solutions of (star margins = 0,
    projection = g).  Among them, keep those whose K4-tilde margin of m- is
    minimal in the order b' <= b iff b - b' in NB; ties are broken by the
    lexicographically smallest vector.
    """
    return list(_lifts_cached(tuple(int(x) for x in g)))


def lift_is_connecting(g, max_total: int = 6) -> tuple[bool, int]:
    """Every K4-tilde fiber edge with triangle difference g is bridged by a lift.

    For each three-star fiber up to ``max_total`` and each pair u, v of its
    tables with triangle(v) - triangle(u) = g, check that some lift m has
    u + m in the fiber; returns (ok, pairs checked).
    """
    S = model.named_design("three-star")
    L = [np.asarray(l.vector) for l in lifts(g)]
    g = np.asarray(g)
    checked = 0
    for d, margins in fiber.margins_by_degree(S.matrix, max_total):
        for b in margins:
            T = fiber.enumerate_fiber(S, b).tables
            tri = {}
            for t in T:
                tri.setdefault(tuple(triangle_projection(t)), []).append(t)
            for y, ts in tri.items():
                target = tuple(np.add(y, g))
                if target not in tri:
                    continue
                for t in ts:
                    checked += 1
                    if not any((t + m >= 0).all() for m in L):
                        return False, checked
    return True, checked


# -- glue -----------------------------------------------------------------------------------

@dataclass(frozen=True)
class GluedMove:
    components: tuple[Lift, ...]
    vector: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(x for x in self.vector if x > 0)


def _rows(v, side: int) -> dict[int, list[int]]:
    """Triangle state -> list of x4 values for the positive (1) or negative (-1) side."""
    out: dict[int, list[int]] = {t: [] for t in range(8)}
    for i, x in enumerate(v):
        c = x * side
        if c > 0:
            out[i & 7] += [i >> 3] * int(c)
    return out


def glue(components) -> GluedMove:
    comps = tuple(components)
    if not comps:
        raise ValueError("need at least one component")
    g = comps[0].pf_move
    if any(c.pf_move != g for c in comps):
        raise ValueError("components lift different projected moves")
    N = len(comps)
    exc = np.array([c.excess() for c in comps])
    xi = exc.max(axis=0)
    v = np.zeros(8 << N, dtype=np.int64)
    for side in (1, -1):
        cols = []
        for c, e in zip(comps, exc):
            r = _rows(c.vector, side)
            for t in range(8):
                # pad to the common excess with a cancelling row at x4 = 0
                r[t] += [0] * int(xi[t] - e[t])
                r[t].sort()
            cols.append(r)
        for t in range(8):
            for ys in zip(*[cols[k][t] for k in range(N)]):
                idx = t + sum(y << (3 + k) for k, y in enumerate(ys))
                v[idx] += side
    return GluedMove(comps, tuple(int(x) for x in v))


def _pairings(cols: list[list[int]]):
    """Distinct multisets of N-tuples whose k-th entries form the multiset cols[k]."""
    def rec(k, parts):
        if k == len(cols):
            yield parts
            return
        ones = sum(cols[k])
        classes = sorted(Counter(parts).items())
        def split(i, left, acc):
            if i == len(classes):
                if left == 0:
                    yield acc
                return
            p, mu = classes[i]
            for o in range(min(mu, left) + 1):
                yield from split(i + 1, left - o, acc + [p + (1,)] * o + [p + (0,)] * (mu - o))
        for nxt in split(0, ones, []):
            yield from rec(k + 1, tuple(sorted(nxt)))
    c = len(cols[0])
    yield from rec(0, tuple([()] * c))


def glue_all(components, maxdeg: int | None = None) -> set[tuple[int, ...]]:
    """Every glue of the components: all consistent row pairings and padding values.

    Padding rows cancel inside a component, so each may carry either value
    of that factor.  Zero results are dropped; ``maxdeg`` skips tuples whose
    glues are certainly larger (degree is at most |g+| + |xi|).
    """
    comps = tuple(components)
    g = np.asarray(comps[0].pf_move)
    N = len(comps)
    exc = np.array([c.excess() for c in comps])
    xi = exc.max(axis=0)
    # no row can cancel: at every triangle state some component has no padding,
    # so every glue of these components has degree |g+| + |xi|
    if maxdeg is not None and int(np.maximum(g, 0).sum() + xi.sum()) > maxdeg:
        return set()
    pads = [[(t, int(xi[t] - e[t])) for t in range(8) if xi[t] > e[t]] for e in exc]
    pad_opts = [itertools.product(*[range(k + 1) for _, k in pk]) for pk in pads]
    out = set()
    base = [{s: _rows(c.vector, s) for s in (1, -1)} for c in comps]
    for choice in itertools.product(*[list(o) for o in pad_opts]):
        per_side = []
        for side in (1, -1):
            per_t = []
            for t in range(8):
                cols = []
                for k in range(N):
                    col = list(base[k][side][t])
                    for (tt, cnt), ones in zip(pads[k], choice[k]):
                        if tt == t:
                            col += [1] * ones + [0] * (cnt - ones)
                    cols.append(col)
                per_t.append([(t, p) for p in _pairings(cols)] if cols[0] else [(t, ())])
            per_side.append(per_t)
        for pos in itertools.product(*per_side[0]):
            for neg in itertools.product(*per_side[1]):
                v = np.zeros(8 << N, dtype=np.int64)
                for side, sel in ((1, pos), (-1, neg)):
                    for t, tuples in sel:
                        for ys in tuples:
                            v[k3n_index(t, ys)] += side
                if v.any():
                    out.add(tuple(notation.canonical_sign(v).tolist()))
    return out


def xi_excess(m) -> np.ndarray:
    """xi(m+) - g+ for a glued move (g is the move's triangle projection)."""
    v = np.asarray(m.vector if isinstance(m, GluedMove) else m, dtype=np.int64)
    g = triangle_projection(v)
    return triangle_projection(np.maximum(v, 0)) - np.maximum(g, 0)


# excess bounds per orbit representative (as sets of triangle states, node order)
EXCESS_BOUNDS = (
    ((("000", "110"), ("010", "100")), ("001", "011", "101", "111")),
    ((("000", "111"), ("010", "101")), ("001", "011", "100", "110")),
    ((("000", "001", "110", "111"), ("010", "011", "100", "101")), TRIANGLE),
    ((("000", "011", "101", "110"), ("001", "010", "100", "111")), TRIANGLE),
)


def _from_rows(pos, neg, k=3) -> np.ndarray:
    return notation.from_tableau(notation.Tableau(tuple(sorted(pos)), tuple(sorted(neg))), k)


@lru_cache(maxsize=1)
def _bound_table() -> dict[tuple, tuple[np.ndarray, int]]:
    G = notation.SymmetryGroup(3, ((2, 1, 3), (1, 3, 2)), ((1,), (2,), (3,))).elements()
    table = {}
    for k, ((pos, neg), states) in enumerate(EXCESS_BOUNDS):
        rep = _from_rows(pos, neg)
        ind = np.zeros(8, dtype=np.int64)
        for s in states:
            ind[y_index(s)] = 1
        for perm in G:
            img = notation.act(perm, rep)
            bd = notation.act(perm, ind)
            for sgn in (1, -1):
                table.setdefault(tuple((sgn * img).tolist()), (bd, k))
    return table


def excess_bound(g) -> np.ndarray:
    """Entrywise bound on xi(m+) - g+ for glues of lifts of g."""
    key = tuple(int(x) for x in g)
    if key not in _bound_table():
        raise KeyError(f"{key} is not a projected-fiber move")
    return _bound_table()[key][0]


def excess_orbit(g) -> int:
    return _bound_table()[tuple(int(x) for x in g)][1]


# -- assembly -------------------------------------------------------------------------------

def k3n_index(t: int, ys) -> int:
    return t + sum(int(y) << (3 + k) for k, y in enumerate(ys))


def quadratic_swaps(N: int) -> MoveSet:
    """[t D E; t D' E'] - [t D E'; t D' E] over factor splits, t the triangle state."""
    moves = set()
    for t in range(8):
        for y, z in itertools.combinations(itertools.product((0, 1), repeat=N), 2):
            for S in range(1, 1 << N):
                y2 = tuple(z[k] if S >> k & 1 else y[k] for k in range(N))
                z2 = tuple(y[k] if S >> k & 1 else z[k] for k in range(N))
                v = np.zeros(8 << N, dtype=np.int64)
                v[k3n_index(t, y)] += 1
                v[k3n_index(t, z)] += 1
                v[k3n_index(t, y2)] -= 1
                v[k3n_index(t, z2)] -= 1
                if v.any():
                    moves.add(tuple(notation.canonical_sign(v).tolist()))
    return MoveSet(moves, 8 << N)


@lru_cache(maxsize=1)
def _k4_kernel() -> np.ndarray:
    return markov.markov_basis(model.named_design("k4tilde")).array()


def kernel_lifts(N: int, constant: bool = False) -> MoveSet:
    """K4-tilde kernel moves placed on factor j, other factors filled in.

    A kernel move pairs its rows by triangle state; each pair may carry its
    own values on the other factors (a glue with zero moves).  With
    ``constant`` the other factors take one value on all rows.
    """
    zero = Lift((0,) * 8, (0,) * 16)
    moves = set()
    for m in _k4_kernel():
        lift = Lift((0,) * 8, tuple(int(x) for x in m))
        for j in range(N):
            if not constant:
                comps = [zero] * N
                comps[j] = lift
                moves |= glue_all(comps)
                continue
            others = [k for k in range(N) if k != j]
            for E in itertools.product((0, 1), repeat=len(others)):
                v = np.zeros(8 << N, dtype=np.int64)
                for i, x in enumerate(m):
                    ys = [0] * N
                    ys[j] = i >> 3
                    for k, e in zip(others, E):
                        ys[k] = e
                    v[k3n_index(i & 7, ys)] += x
                moves.add(tuple(notation.canonical_sign(v).tolist()))
    return MoveSet(moves, 8 << N)


def all_glues(N: int, pf: MoveSet | None = None):
    """Canonical glue of every ordered N-tuple of lifts of every projected move."""
    pf = pf or pf_markov_basis()
    for g in pf.array():
        L = lifts(g)
        for comps in itertools.product(L, repeat=N):
            yield glue(comps)


def glue_moves(N: int, maxdeg: int | None = None, pf: MoveSet | None = None) -> MoveSet:
    """All glues (every pairing and padding) of degree <= maxdeg."""
    pf = pf or pf_markov_basis()
    maxdeg = degree_bound(N) if maxdeg is None else maxdeg
    out = set()
    for g in pf.array():
        L = [l for l in lifts(g) if l.degree <= maxdeg]
        for comps in itertools.product(L, repeat=N):
            out |= glue_all(comps, maxdeg)
    return MoveSet(out, 8 << N)


@dataclass
class Assembly:
    N: int
    quadratics: MoveSet
    glues: MoveSet
    kernel: MoveSet
    constant_kernel: MoveSet
    basis: MoveSet | None = None

    def union(self) -> MoveSet:
        parts = (self.quadratics, self.glues, self.kernel, self.constant_kernel)
        return MoveSet(list(set().union(*[p.as_set() for p in parts])), 8 << self.N)

    def priority(self, v) -> int:
        # lower is kept first: swaps and glues, then kernel lifts, constant ones last
        if v in self._first:
            return 0
        return 2 if v in self.constant_kernel.as_set() else 1

    @property
    def _first(self) -> set:
        if not hasattr(self, "_first_cache"):
            self._first_cache = self.quadratics.as_set() | self.glues.as_set()
        return self._first_cache


def assemble_markov_basis(N: int, minimal: bool = True, maxdeg: int | None = None) -> Assembly:
    """Quadratic swaps, glues of lifts and kernel lifts on K_{3,N}.

    Kernel lifts come in the general form (each row pair carries its own
    values on the other factors) and the constant-column form.  With
    ``minimal`` the union is minimized with constant-column lifts tried last,
    so they are the ones dropped when redundant.  ``maxdeg`` (default the
    degree bound) truncates the union.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    maxdeg = degree_bound(N) if maxdeg is None else maxdeg
    t0 = time.time()
    quad = quadratic_swaps(N)
    gl = glue_moves(N, maxdeg)
    ker = kernel_lifts(N).truncate(maxdeg)
    kc = kernel_lifts(N, constant=True).truncate(maxdeg)
    asm = Assembly(N, quad, gl, ker, kc)
    log.info("N=%d: %d swaps, %d glues, %d kernel lifts (%.1fs)", N, len(quad), len(gl), len(ker), time.time() - t0)
    if minimal:
        asm.basis = markov.minimize(asm.union().array(), model.named_design(f"k3n:{N}"), priority=asm.priority)
    return asm


def glue_degree_stats(N: int, pf: MoveSet | None = None) -> dict[int, int]:
    """Degree counts over all ordered N-tuples of lifts, streamed over multisets.

    Every glue of a tuple (any pairing) has degree |g+| + |xi|, so the count
    needs no gluing.
    """
    pf = pf or pf_markov_basis()
    stats: Counter = Counter()
    for g in pf.array():
        L = lifts(g)
        E = np.array([l.excess() for l in L])
        gp = int(np.maximum(g, 0).sum())
        for combo in itertools.combinations_with_replacement(range(len(L)), N):
            mult = factorial(N)
            for c in Counter(combo).values():
                mult //= factorial(c)
            stats[gp + int(E[list(combo)].max(axis=0).sum())] += mult
    return dict(sorted(stats.items()))


# -- quadratic reduction -------------------------------------------------------------------

@dataclass
class ReductionTrace:
    reducible: bool
    states: list[np.ndarray]
    moves: list[np.ndarray]

    @property
    def steps(self) -> int:
        return len(self.moves)


def reduce_by_quadratics(m, quadratics, max_states: int = 200_000) -> ReductionTrace:
    """Shortest walk from m+ to m- using the given moves (BFS in the fiber)."""
    m = np.asarray(m, dtype=np.int64)
    Q = np.asarray(quadratics.array() if isinstance(quadratics, MoveSet) else quadratics, dtype=np.int64)
    Q = np.vstack([Q, -Q])
    start, goal = tuple(np.maximum(m, 0)), tuple(np.maximum(-m, 0))
    prev = {start: None}
    dq = deque([start])
    while dq and len(prev) < max_states:
        s = dq.popleft()
        if s == goal:
            break
        nxt = np.asarray(s) + Q
        ok = (nxt >= 0).all(axis=1)
        for k in np.flatnonzero(ok):
            t = tuple(nxt[k].tolist())
            if t not in prev:
                prev[t] = (s, k)
                dq.append(t)
    if goal not in prev:
        return ReductionTrace(False, [np.array(start)], [])
    states, moves = [], []
    cur = goal
    while prev[cur] is not None:
        s, k = prev[cur]
        states.append(np.array(cur))
        moves.append(Q[k])
        cur = s
    states.append(np.array(start))
    return ReductionTrace(True, states[::-1], moves[::-1])


def replay_chain(states, quadratics) -> bool:
    """Consecutive states differ by one of the moves (either sign) and stay >= 0."""
    Q = {tuple(r) for r in np.asarray(quadratics.array() if isinstance(quadratics, MoveSet) else quadratics).tolist()}
    for a, b in zip(states, states[1:]):
        d = np.subtract(b, a)
        if (np.asarray(b) < 0).any():
            return False
        if tuple(d.tolist()) not in Q and tuple((-d).tolist()) not in Q:
            return False
    return True


def chain_states(rows_list, N: int) -> list[np.ndarray]:
    """Tables on K_{3,N} from lists of node-order rows (x1 x2 x3 y1 ... yN)."""
    out = []
    for rows in rows_list:
        v = np.zeros(8 << N, dtype=np.int64)
        for r in rows:
            v[notation.row_index(r)] += 1
        out.append(v)
    return out


def quadratic_moves(N: int) -> MoveSet:
    """Degree-2 moves of the assembled union: swaps and quadratic glues."""
    return MoveSet(list(quadratic_swaps(N).as_set() | glue_moves(N, 2).as_set()), 8 << N)


def instantiate_chain(template, values: dict[str, int]) -> list[np.ndarray]:
    """Tables from parameterized rows (see notation.expand_family for the letters)."""
    rows = [[notation._instantiate(r, values) for r in state] for state in template]
    N = len(template[0][0]) - 3
    return chain_states(rows, N)
