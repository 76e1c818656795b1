"""Rational cones spanned by integer generators.

Facets come from a double description run on the dual cone.  Work happens
in the coordinates ``P`` that are independent on the linear span of the
generators (HNF pivots); a facet normal is written using those coordinates
only, which makes it unique up to scaling.  The remaining directions of the
ambient space are described by equations.

The Hilbert basis of ``cone ∩ lattice`` is read off the slack vectors
``s = F x``.  For a pointed cone ``x -> s`` is injective, so the irreducible
elements are the minimal non-zero points of the lattice ``F L`` inside the
non-negative orthant, a purely sign-restricted completion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

import numpy as np

from . import dio, exact


@dataclass(frozen=True)
class ConeGenerators:
    ambient_dim: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(len(g) != self.ambient_dim for g in self.generators):
            raise ValueError("generator length differs from ambient dimension")
        if any(not any(g) for g in self.generators):
            raise ValueError("zero generator")

    @classmethod
    def of(cls, vectors) -> "ConeGenerators":
        V = exact.as_matrix(vectors)
        if not V:
            raise ValueError("need at least one generator")
        return cls(len(V[0]), tuple(tuple(v) for v in V))

    @classmethod
    def columns(cls, B) -> "ConeGenerators":
        M = getattr(B, "matrix", B)
        return cls.of(np.asarray(M).T)


@dataclass
class FacetSystem:
    inequalities: list[tuple[int, ...]]
    equations: list[tuple[int, ...]]
    lineality_dim: int = 0

    def contains(self, x) -> bool:
        x = [int(v) for v in x]
        dot = lambda a: sum(p * q for p, q in zip(a, x))
        return all(dot(e) == 0 for e in self.equations) and all(dot(f) >= 0 for f in self.inequalities)


@dataclass
class HilbertBasis:
    elements: list[tuple[int, ...]] = field(default_factory=list)


def _primitive_canon(v) -> tuple[int, ...]:
    v = [int(x) for x in v]
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _as_gens(gens) -> ConeGenerators:
    return gens if isinstance(gens, ConeGenerators) else ConeGenerators.of(gens)


def _span_coordinates(G: list[list[int]]) -> list[int]:
    H, _ = exact.hnf(G)
    return exact.pivots([r for r in H if any(r)])


def _dd_rays(A: list[list[int]], r: int) -> list[list[int]]:
    """Extreme rays of the pointed cone {y in Q^r : a.y >= 0 for rows a of A}.

    The rows must span Q^r.  Rows are inserted in order after an initial
    basis; adjacency is decided by the rank of the common tight rows.
    """
    basis = exact.row_basis(A)
    Binv = _inverse([A[i] for i in basis])
    rays = [_primitive_list([Binv[k][j] for k in range(r)]) for j in range(r)]
    inserted = list(basis)
    for i in range(len(A)):
        if i in basis:
            continue
        a = A[i]
        val = [sum(x * y for x, y in zip(a, ray)) for ray in rays]
        pos = [k for k, v in enumerate(val) if v > 0]
        neg = [k for k, v in enumerate(val) if v < 0]
        zer = [k for k, v in enumerate(val) if v == 0]
        tight = [{j for j in inserted if sum(x * y for x, y in zip(A[j], ray)) == 0} for ray in rays]
        new = []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < r - 2:
                    continue
                if exact.rank([A[j] for j in sorted(common)]) != r - 2 and r > 1:
                    continue
                w = [val[p] * y - val[q] * x for x, y in zip(rays[p], rays[q])]
                new.append(_primitive_list(w))
        rays = [rays[k] for k in pos + zer] + new
        inserted.append(i)
    out = sorted({tuple(v) for v in rays})
    return [list(v) for v in out]


def _primitive_list(v) -> list[int]:
    if any(isinstance(x, Fraction) for x in v):
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        v = [int(Fraction(x) * den) for x in v]
    return list(_primitive_canon(v))


def _inverse(M: list[list[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def facets(gens) -> FacetSystem:
    """Facet inequalities (``F.x >= 0``) and equations of the cone over ``gens``."""
    cg = _as_gens(gens)
    G = [list(g) for g in cg.generators]
    n = cg.ambient_dim
    P = _span_coordinates(G)
    r = len(P)
    eqs = [tuple(_primitive_canon(e)) for e in exact.kernel_lattice(G, n).matrix()]
    eqs = [_canon_sign(e) for e in eqs]
    Gp = [[g[j] for j in P] for g in G]
    normals = _dd_rays(Gp, r)
    ineqs = []
    for y in normals:
        f = [0] * n
        for j, p in enumerate(P):
            f[p] = y[j]
        ineqs.append(tuple(f))
    # a normal whose negative is also valid is an implicit equation of a cone with lineality
    lin = r - exact.rank([list(v) for v in normals]) if normals else r
    return FacetSystem(sorted(set(ineqs), reverse=True), sorted(eqs, reverse=True), lin)


def _canon_sign(v) -> tuple[int, ...]:
    nz = next((x for x in v if x), 0)
    return tuple(-x for x in v) if nz < 0 else tuple(v)


def extreme_rays(gens) -> list[tuple[int, ...]]:
    """Primitive directions of the generators that span extreme rays (pointed cones)."""
    cg = _as_gens(gens)
    fs = facets(cg)
    out = set()
    for g in cg.generators:
        tight = [f for f in fs.inequalities if sum(a * b for a, b in zip(f, g)) == 0]
        span_rank = len(_span_coordinates([list(x) for x in cg.generators]))
        if tight and exact.rank([list(t) for t in tight]) == span_rank - 1:
            out.add(_primitive_canon(g))
        elif span_rank == 1:
            out.add(_primitive_canon(g))
    return sorted(out)


def rays_from_facets(fs: FacetSystem, ambient_dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x : E x = 0, F x >= 0}`` (assumed pointed)."""
    if fs.equations:
        K = exact.kernel_lattice([list(e) for e in fs.equations], ambient_dim).matrix()
    else:
        K = exact.identity(ambient_dim)
    # x = c K; inequalities become (F K^T) c >= 0 in Q^r
    r = len(K)
    A = [[sum(f[j] * K[k][j] for j in range(ambient_dim)) for k in range(r)] for f in fs.inequalities]
    rays = _dd_rays(A, r)
    out = []
    for c in rays:
        x = [sum(c[k] * K[k][j] for k in range(r)) for j in range(ambient_dim)]
        out.append(_primitive_canon(x))
    return sorted(set(out))


def hilbert_basis(gens) -> HilbertBasis:
    """Irreducible elements of ``cone(gens) ∩ lattice(gens)``."""
    cg = _as_gens(gens)
    G = [list(g) for g in cg.generators]
    n = cg.ambient_dim
    H, _ = exact.hnf(G)
    Lb = [r for r in H if any(r)]
    r = len(Lb)
    F = facets(cg).inequalities
    # slack image s = F x of each lattice basis vector
    S = [[sum(f[j] * l[j] for j in range(n)) for f in F] for l in Lb]
    if exact.rank(S) == r:
        # pointed cone: x -> s is injective and the problem is a pure
        # non-negative one in slack space
        sols = dio.project_and_lift(S, [True] * len(F))
        SL = exact.LatticeBasis(len(F), tuple(tuple(x) for x in S))
        elems = set()
        for s_ in sols:
            z = exact.lattice_coordinates(SL, s_)
            elems.add(tuple(sum(z[i] * Lb[i][j] for i in range(r)) for j in range(n)))
        return HilbertBasis(sorted(elems))
    # cone with lineality: keep z free and filter by slack-minimality
    A = [row + [0] * len(F) for row in exact.transpose(S)]
    for i in range(len(F)):
        A[i][r + i] = -1
    signs = [dio.FREE] * r + [dio.NONNEG] * len(F)
    sols = dio.minimal_homogeneous(dio.DioSystem.make(A, None, signs)).homogeneous
    Sv = np.array([x[r:] for x in sols], dtype=np.int64).reshape(-1, len(F))
    elems = set()
    for k in range(len(Sv)):
        below = (Sv <= Sv[k]).all(axis=1) & (Sv != Sv[k]).any(axis=1) & Sv.any(axis=1)
        # zero slack means the element lies in the lineality space
        if not Sv[k].any() or not below.any():
            z = sols[k][:r]
            elems.add(tuple(sum(z[i] * Lb[i][j] for i in range(r)) for j in range(n)))
    return HilbertBasis(sorted(elems))


@dataclass
class Membership:
    member: bool
    certificate: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.member


def semigroup_member(gens, v) -> Membership:
    """Is ``v`` a non-negative integer combination of ``gens``?"""
    cg = _as_gens(gens)
    v = [int(x) for x in v]
    if len(v) != cg.ambient_dim:
        raise ValueError("vector length differs from ambient dimension")
    m = len(cg.generators)
    if not any(v):
        return Membership(True, tuple([0] * m))
    A = exact.transpose([list(g) for g in cg.generators])
    G = np.array(cg.generators, dtype=np.int64)
    if (G >= 0).all():
        # non-negative generators: a bounded search for one solution is enough
        from . import fiber
        if (np.asarray(v) < 0).any():
            return Membership(False)
        M = np.ascontiguousarray(G.T)
        sol = fiber.first_solution(M, np.asarray(v, dtype=np.int64))
        return Membership(sol is not None, None if sol is None else tuple(int(x) for x in sol))
    res = dio.minimal_inhomogeneous(dio.DioSystem.make(A, v))
    if res.inhomogeneous:
        return Membership(True, res.inhomogeneous[0])
    return Membership(False)


# -- text files ---------------------------------------------------------------------

def format_facets(fs: FacetSystem, ambient_dim: int) -> str:
    out = []
    for tag, rows in (("inequalities", fs.inequalities), ("equations", fs.equations)):
        out.append(tag)
        out.append(exact.format_matrix([list(r) for r in rows], ambient_dim).rstrip())
    return "\n".join(out) + "\n"


def parse_facets(text: str) -> FacetSystem:
    parts: dict[str, list[str]] = {}
    cur = None
    for line in text.splitlines():
        s = line.strip()
        if s in ("inequalities", "equations", "lattice"):
            cur = s
            parts[cur] = []
        elif s and cur:
            parts[cur].append(s)
    get = lambda k: [tuple(r) for r in exact.parse_matrix("\n".join(parts[k]))] if k in parts else []
    return FacetSystem(get("inequalities"), get("equations"))


def write_facets(path, fs: FacetSystem, ambient_dim: int) -> None:
    Path(path).write_text(format_facets(fs, ambient_dim))
