"""Holes of a semigroup NB: elements of cone(B) ∩ ZB outside NB.

Fundamental holes are the Hilbert basis elements of the saturation that are
not in NB.  Every hole arising from a fundamental hole h has the form
h + B lambda with lambda a standard monomial of the ideal spanned by the
lambda-parts of the minimal solutions of h + B lambda = B mu.  When that
ideal has a single standard pair (1, S) the holes over h are h + N B_S, a
"hole family" with direction columns S.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import cone, dio, exact, fiber
from .model import DesignMatrix, named_design

log = logging.getLogger(__name__)


# -- monomial ideals and standard pairs ------------------------------------------

@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, gens, nvars: int | None = None) -> "MonomialIdeal":
        gens = [tuple(int(x) for x in g) for g in gens]
        if nvars is None:
            if not gens:
                raise ValueError("nvars needed for the zero ideal")
            nvars = len(gens[0])
        if any(len(g) != nvars for g in gens):
            raise ValueError("exponent vector of wrong length")
        gens = sorted(set(gens))
        mins = [g for g in gens if not any(h != g and all(a <= b for a, b in zip(h, g)) for h in gens)]
        return cls(nvars, tuple(mins))

    def contains(self, m) -> bool:
        return any(all(a <= b for a, b in zip(g, m)) for g in self.generators)


@dataclass(frozen=True)
class StandardPair:
    root: tuple[int, ...]
    free_vars: frozenset[int]

    def __post_init__(self):
        if any(self.root[i] for i in self.free_vars):
            raise ValueError("root must vanish on the free variables")

    def covers(self, m) -> bool:
        return all(b >= a if i in self.free_vars else b == a for i, (a, b) in enumerate(zip(self.root, m)))


def _admissible(I: MonomialIdeal, m, S) -> bool:
    # m * N^S misses I iff every generator exceeds m somewhere outside S
    return all(any(g[k] > m[k] and k not in S for k in range(I.nvars)) for g in I.generators)


def _dominates(p: StandardPair, q: StandardPair) -> bool:
    """p covers the whole set q.root * N^{q.free_vars}."""
    if not q.free_vars <= p.free_vars:
        return False
    return p.covers(q.root)


def standard_pairs(I: MonomialIdeal) -> list[StandardPair]:
    """The standard pairs of ``I``: maximal (root, S) with root * N^S outside I.

    Roots of maximal pairs satisfy root_i < max_g g_i (otherwise i could be
    freed), so roots range over a finite box; for each root the admissible
    free sets are the subsets avoiding every "blocking" set, whose maximal
    members are found by a bitmask scan.
    """
    n = I.nvars
    D = [max((g[i] for g in I.generators), default=0) for i in range(n)]
    pairs = []
    for m in itertools.product(*[range(d) if d else (0,) for d in D]):
        if I.contains(m):
            continue
        W = [i for i in range(n) if m[i] == 0]
        blocks = []
        for g in I.generators:
            T = {k for k in range(n) if g[k] > m[k]}
            if T <= set(W):
                blocks.append(sum(1 << W.index(k) for k in T))
        masks = np.arange(1 << len(W), dtype=np.int64)
        ok = np.ones(len(masks), dtype=bool)
        for bm in blocks:
            ok &= (masks & bm) != bm
        good = masks[ok]
        # maximal admissible free sets for this root
        for s in good:
            if any((s | (1 << t)) != s and ok[s | (1 << t)] for t in range(len(W))):
                continue
            pairs.append(StandardPair(m, frozenset(W[t] for t in range(len(W)) if s >> t & 1)))
    out = [p for p in pairs if not any(q != p and _dominates(q, p) for q in pairs)]
    return sorted(out, key=lambda p: (sum(p.root), p.root, sorted(p.free_vars)))


def standard_monomial_count(pairs: list[StandardPair], box: int, n: int) -> int:
    """Monomials with all exponents <= box covered by at least one pair."""
    return sum(1 for m in itertools.product(range(box + 1), repeat=n) if any(p.covers(m) for p in pairs))


# -- holes ---------------------------------------------------------------------------

@dataclass
class FundamentalHole:
    vector: tuple[int, ...]
    # (partner label, multiplicities of columns) with  sum = B * multiplicities
    witness_identities: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)


@dataclass
class HoleFamily:
    base: FundamentalHole
    directions: tuple[int, ...]
    separating_functional: tuple[int, ...]

    def member(self, lam) -> np.ndarray:
        return np.asarray(self.base.vector) + self._B[:, list(self.directions)] @ np.asarray(lam)

    _B: np.ndarray = field(default=None, repr=False)


class HoleContext:
    """Caches the cone, lattice and generator data of one design matrix."""

    def __init__(self, B):
        self.design = B if isinstance(B, DesignMatrix) else None
        self.M = np.asarray(B.matrix if isinstance(B, DesignMatrix) else B, dtype=np.int64)
        self.gens = cone.ConeGenerators.columns(self.M)

    @cached_property
    def facets(self) -> cone.FacetSystem:
        return cone.facets(self.gens)

    @cached_property
    def lattice(self) -> exact.LatticeBasis:
        return exact.LatticeBasis.spanned_by(self.M.T.tolist(), self.M.shape[0])

    def in_semigroup(self, v) -> bool:
        return bool(cone.semigroup_member(self.gens, v))

    def certificate(self, v) -> tuple[int, ...] | None:
        return cone.semigroup_member(self.gens, v).certificate

    def is_hole(self, v) -> bool:
        v = [int(x) for x in v]
        return self.facets.contains(v) and v in self.lattice and not self.in_semigroup(v)


def _hole_order(v) -> tuple:
    return tuple(-x for x in v)


def fundamental_holes(B, ctx: HoleContext | None = None) -> list[FundamentalHole]:
    ctx = ctx or HoleContext(B)
    hb = cone.hilbert_basis(ctx.gens).elements
    vecs = sorted((h for h in hb if not ctx.in_semigroup(h)), key=_hole_order)
    holes = [FundamentalHole(tuple(v)) for v in vecs]
    for (i, a), (j, b) in itertools.combinations_with_replacement(enumerate(holes), 2):
        s = np.add(a.vector, b.vector)
        cert = ctx.certificate(s)
        if cert is None:
            continue
        if not np.array_equal(ctx.M @ np.array(cert), s):
            raise AssertionError("certificate does not reproduce the sum")
        a.witness_identities.append((f"h{i + 1}+h{j + 1}", tuple(cert)))
        if i != j:
            b.witness_identities.append((f"h{i + 1}+h{j + 1}", tuple(cert)))
    return holes


def hole_exponent_ideal(h, B) -> MonomialIdeal:
    """Ideal of the lambda-parts of minimal solutions of h + B lambda = B mu."""
    M = np.asarray(B.matrix if isinstance(B, DesignMatrix) else B, dtype=np.int64)
    n = M.shape[1]
    v = h.vector if isinstance(h, FundamentalHole) else h
    A = np.hstack([M, -M]).tolist()
    sols = dio.minimal_inhomogeneous(dio.DioSystem.make(A, [-int(x) for x in v]))
    if not sols.inhomogeneous:
        raise ValueError("h is not in the group generated by B")
    return MonomialIdeal.of([s[:n] for s in sols.inhomogeneous], n)


def _functional(M: np.ndarray, base, dirs) -> tuple[int, ...]:
    """Indicator of margin rows vanishing on the base and every direction."""
    zero = (np.asarray(base) == 0) & (M[:, list(dirs)] == 0).all(axis=1)
    return tuple(int(x) for x in zero)


def hole_families(B, ctx: HoleContext | None = None) -> list[HoleFamily]:
    ctx = ctx or HoleContext(B)
    fams = []
    for h in fundamental_holes(B, ctx):
        I = hole_exponent_ideal(h, ctx.M)
        sp = standard_pairs(I)
        if len(sp) != 1 or any(sp[0].root):
            raise NotImplementedError(f"holes over {h.vector} are not a single free family: {sp}")
        dirs = tuple(sorted(sp[0].free_vars))
        fam = HoleFamily(h, dirs, _functional(ctx.M, h.vector, dirs))
        fam._B = ctx.M
        fams.append(fam)
    return fams


def _lambdas(k: int, bound: int):
    for total in range(bound + 1):
        for c in itertools.combinations_with_replacement(range(k), total):
            lam = np.zeros(k, dtype=np.int64)
            for i in c:
                lam[i] += 1
            yield lam


@dataclass
class SeparationReport:
    passed: bool
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    members: int = 0
    fibers: int = 0


def projection_rows(B) -> list[int]:
    """Rows of every facet but the first (the star margins for K4-tilde)."""
    if isinstance(B, DesignMatrix):
        first = B.complex.facets[0]
        return [r for r, (F, _) in enumerate(B.row_labels) if F != first]
    raise ValueError("projection rows need a DesignMatrix")


def verify_separation(B, families: list[HoleFamily], bound: int = 3,
                  functionals: list | None = None, rows: list[int] | None = None,
                  ctx: HoleContext | None = None) -> SeparationReport:
    """Brute-force check of the hole structure up to ``|lambda|_1 <= bound``.

    Checks per family: members are holes and distinct, no two members share
    a projection, the family's functional is zero on members and positive
    on every semigroup element of the same projected fiber.  Across
    families: no common members.
    """
    ctx = ctx or HoleContext(B)
    M = ctx.M
    rows = projection_rows(B) if rows is None else rows
    P = M[rows]
    funcs = functionals or [f.separating_functional for f in families]
    rep = SeparationReport(True)

    def record(name, ok, detail=""):
        rep.checks.append((name, bool(ok), detail))
        rep.passed &= bool(ok)

    members = []
    for k, fam in enumerate(families):
        dirs = list(fam.directions)
        rank_ok = exact.rank(P[:, dirs].T.tolist()) == len(dirs)
        record(f"family {k + 1}: projected directions independent", rank_ok)
        l = np.asarray(funcs[k])
        vs, projs = [], set()
        bad_hole = bad_zero = bad_pos = 0
        dup_proj = False
        for lam in _lambdas(len(dirs), bound):
            v = np.asarray(fam.base.vector) + M[:, dirs] @ lam
            vs.append(tuple(v.tolist()))
            if not ctx.is_hole(v):
                bad_hole += 1
            if l @ v != 0:
                bad_zero += 1
            # projected fiber: all tables whose projection equals that of v
            target = np.asarray(v)[rows]
            key = tuple(target.tolist())
            dup_proj |= key in projs
            projs.add(key)
            f = fiber.enumerate_fiber(P, target)
            rep.fibers += 1
            for t in f.tables:
                w = M @ t
                if l @ w <= 0:
                    bad_pos += 1
        rep.members += len(vs)
        members.append(set(vs))
        record(f"family {k + 1}: members are holes", bad_hole == 0, f"{bad_hole} failures")
        record(f"family {k + 1}: functional vanishes on members", bad_zero == 0, f"{bad_zero} failures")
        record(f"family {k + 1}: functional positive on semigroup points of the projected fiber",
               bad_pos == 0, f"{bad_pos} failures")
        record(f"family {k + 1}: one member per projected fiber", not dup_proj)
    for a, b in itertools.combinations(range(len(members)), 2):
        record(f"families {a + 1} and {b + 1} disjoint", not (members[a] & members[b]))
    return rep


def summary(v, B: DesignMatrix) -> str:
    """Support of the first facet's margin plus the constant values elsewhere."""
    first = B.complex.facets[0]
    tri = [("".join(map(str, s)), int(x)) for (F, s), x in zip(B.row_labels, v) if F == first]
    rest = sorted({int(x) for (F, _), x in zip(B.row_labels, v) if F != first})
    sup = ",".join(f"{s}" if x == 1 else f"{s}^{x}" for s, x in tri if x)
    return f"first-facet support {{{sup}}}; other margins {'constant ' + str(rest[0]) if len(rest) == 1 else rest}"


def k4_tilde_context() -> tuple[DesignMatrix, HoleContext]:
    B = named_design("k4tilde")
    return B, HoleContext(B)
