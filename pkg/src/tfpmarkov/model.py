"""Simplicial complexes, state spaces and hierarchical-model design matrices.

Vertices are numbered from 1.  A state is a tuple ``(x_1, ..., x_k)``; the
global state index is ``sum x_i * d_1 * ... * d_{i-1}`` (for binary nodes
``sum x_i 2^(i-1)``), so node 1 is the least significant digit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    facets: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        if not self.facets:
            raise ValueError("a complex needs at least one facet")
        for F in self.facets:
            if not F:
                raise ValueError("empty facet")
            if any(v < 1 or v > self.vertex_count for v in F):
                raise ValueError(f"facet {F} references a vertex outside 1..{self.vertex_count}")
        for F, G in itertools.permutations(self.facets, 2):
            if set(F) <= set(G):
                raise ValueError(f"facet {F} is contained in {G}")
        covered = set().union(*map(set, self.facets))
        if covered != set(range(1, self.vertex_count + 1)):
            raise ValueError("every vertex must lie in some facet")


def _maximal(faces: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []
    for F in faces:
        F = tuple(sorted(set(int(v) for v in F)))
        if not F:
            raise ValueError("empty facet")
        if any(set(F) <= set(G) for G in out):
            continue
        out = [G for G in out if not set(G) <= set(F)]
        out.append(F)
    return tuple(out)


def k3n(N: int) -> SimplicialComplex:
    if N < 1:
        raise ValueError("K_{3,N} needs N >= 1")
    facets = tuple((i, 3 + j) for j in range(1, N + 1) for i in (1, 2, 3))
    return SimplicialComplex(3 + N, facets, f"K3,{N}")


def three_star() -> SimplicialComplex:
    return SimplicialComplex(4, ((1, 4), (2, 4), (3, 4)), "three-star")


def k4_tilde() -> SimplicialComplex:
    """K_4 with the triangle {1,2,3} filled; the triangle comes first."""
    return SimplicialComplex(4, ((1, 2, 3), (1, 4), (2, 4), (3, 4)), "K4-tilde")


def build_complex(spec, vertex_count: int | None = None) -> SimplicialComplex:
    """Named model (``k3n:N``, ``three-star``, ``k4tilde``) or an explicit facet list."""
    if isinstance(spec, SimplicialComplex):
        return spec
    if isinstance(spec, str):
        key = spec.strip().lower().replace("_", "-")
        m = re.fullmatch(r"k3,?n?[:=(]?(\d+)\)?", key.replace(" ", ""))
        if m:
            return k3n(int(m.group(1)))
        if key in ("three-star", "threestar", "star", "k3,1-star"):
            return three_star()
        if key in ("k4tilde", "k4-tilde", "k4t"):
            return k4_tilde()
        raise ValueError(f"unknown model {spec!r}")
    facets = _maximal(spec)
    if not facets:
        raise ValueError("empty facet list")
    n = vertex_count if vertex_count is not None else max(max(F) for F in facets)
    return SimplicialComplex(n, facets)


@dataclass(frozen=True)
class StateSpace:
    arities: tuple[int, ...]

    @property
    def total_states(self) -> int:
        return prod(self.arities)

    def index(self, state: Sequence[int]) -> int:
        idx, w = 0, 1
        for x, d in zip(state, self.arities):
            if not 0 <= x < d:
                raise ValueError(f"state {tuple(state)} out of range")
            idx += x * w
            w *= d
        return idx

    def state(self, index: int) -> tuple[int, ...]:
        out = []
        for d in self.arities:
            out.append(index % d)
            index //= d
        return tuple(out)

    def states(self) -> list[tuple[int, ...]]:
        return [self.state(i) for i in range(self.total_states)]


@dataclass(frozen=True)
class DesignMatrix:
    complex: SimplicialComplex
    states: StateSpace
    row_labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @cached_property
    def matrix(self) -> np.ndarray:
        cols = self.states.states()
        M = np.zeros((len(self.row_labels), len(cols)), dtype=np.int64)
        for r, (F, fs) in enumerate(self.row_labels):
            for c, x in enumerate(cols):
                if tuple(x[v - 1] for v in F) == fs:
                    M[r, c] = 1
        M.setflags(write=False)
        return M

    @cached_property
    def row_index(self) -> dict:
        return {lab: r for r, lab in enumerate(self.row_labels)}

    def facet_rows(self, F: tuple[int, ...]) -> list[int]:
        return [r for r, (G, _) in enumerate(self.row_labels) if G == F]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), self.states.total_states


def design_matrix(complex: SimplicialComplex, arities: Sequence[int] | None = None) -> DesignMatrix:
    """0/1 matrix with a row per (facet, facet-state) and a column per state."""
    if arities is None:
        arities = (2,) * complex.vertex_count
    arities = tuple(int(d) for d in arities)
    if len(arities) != complex.vertex_count:
        raise ValueError("one arity per vertex required")
    if any(d < 2 for d in arities):
        raise ValueError("arities must be at least 2")
    labels = []
    for F in complex.facets:
        sub = StateSpace(tuple(arities[v - 1] for v in F))
        labels += [(F, sub.state(i)) for i in range(sub.total_states)]
    return DesignMatrix(complex, StateSpace(arities), tuple(labels))


def margin(B: DesignMatrix | np.ndarray, table) -> np.ndarray:
    M = B.matrix if isinstance(B, DesignMatrix) else np.asarray(B)
    t = np.asarray(table, dtype=np.int64)
    if t.shape[-1] != M.shape[1]:
        raise ValueError(f"table has {t.shape[-1]} cells, design has {M.shape[1]} columns")
    if (t < 0).any():
        raise ValueError("tables are non-negative")
    return t @ M.T


def named_design(spec) -> DesignMatrix:
    return design_matrix(build_complex(spec))
