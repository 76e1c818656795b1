"""Tensor and tableau renderings of moves, symmetry orbits, family expansion.

Two string conventions are in use and they run in opposite directions:

* tableau rows list node values in node order, ``x_1 x_2 ... x_k``;
* tensor strings are binary numerals ``x_k ... x_1`` whose value is the
  position of the state in a flat coefficient vector.

So the tableau row ``1100`` and the tensor string ``0011`` both name the
state with ``x_1 = x_2 = 1``, which sits at position 3.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


def tensor_index(state) -> int:
    """Position of a binary state: ``sum x_i 2^(i-1)``.

    ``state`` is either a tuple ``(x_1, ..., x_k)`` or a tensor string
    ``"x_k...x_1"``.
    """
    if isinstance(state, str):
        if any(ch not in "01" for ch in state):
            raise ValueError(f"non-binary state {state!r}")
        return int(state, 2) if state else 0
    idx = 0
    for i, x in enumerate(state):
        if x not in (0, 1):
            raise ValueError(f"non-binary state {tuple(state)}")
        idx |= int(x) << i
    return idx


def state_of(index: int, k: int) -> tuple[int, ...]:
    return tuple((index >> i) & 1 for i in range(k))


def row_string(index: int, k: int) -> str:
    """Tableau row (node order) of a state index."""
    return "".join(str(b) for b in state_of(index, k))


def row_index(row: str) -> int:
    return tensor_index(tuple(int(ch) for ch in row))


def canonical_sign(v) -> np.ndarray:
    """Flip ``v`` so that its first non-zero entry is positive."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if len(nz) and v[nz[0]] < 0:
        return -v
    return v


def degree(v) -> int:
    v = np.asarray(v)
    return int(np.maximum(v, 0).sum())


@dataclass(frozen=True)
class Tableau:
    """A balanced move as two sorted row lists (repeated rows = multiplicity)."""

    positive_rows: tuple[str, ...]
    negative_rows: tuple[str, ...]

    def __post_init__(self):
        if len(self.positive_rows) != len(self.negative_rows):
            raise ValueError("tableau sides must have equal row counts")

    @property
    def k(self) -> int:
        rows = self.positive_rows + self.negative_rows
        return len(rows[0]) if rows else 0

    def __str__(self) -> str:
        return "[" + "; ".join(self.positive_rows) + "] - [" + "; ".join(self.negative_rows) + "]"


def to_tableau(v, k: int | None = None) -> Tableau:
    v = np.asarray(v, dtype=np.int64)
    if k is None:
        k = max(1, int(len(v)).bit_length() - 1)
    if len(v) != 1 << k:
        raise ValueError(f"vector of length {len(v)} is not a binary {k}-way table")
    if v.sum() != 0:
        raise ValueError("unbalanced move (entries do not sum to zero)")
    pos, neg = [], []
    for i, x in enumerate(v):
        side = pos if x > 0 else neg
        side += [row_string(i, k)] * abs(int(x))
    return Tableau(tuple(sorted(pos)), tuple(sorted(neg)))


def from_tableau(t: Tableau, k: int | None = None) -> np.ndarray:
    k = t.k if k is None else k
    v = np.zeros(1 << k, dtype=np.int64)
    for r in t.positive_rows:
        v[row_index(r)] += 1
    for r in t.negative_rows:
        v[row_index(r)] -= 1
    return v


def parse_tableau(text: str) -> Tableau:
    """Parse ``"[0000; 1100] - [0100; 1000]"``."""
    m = re.fullmatch(r"\s*\[(.*)\]\s*-\s*\[(.*)\]\s*", text)
    if not m:
        raise ValueError(f"cannot parse tableau {text!r}")

    def rows(part: str) -> tuple[str, ...]:
        return tuple(sorted(r.strip() for r in part.replace(",", ";").split(";") if r.strip()))
    return Tableau(rows(m.group(1)), rows(m.group(2)))


def format_tensor(v) -> str:
    return ", ".join(str(int(x)) for x in v)


def parse_tensor(text: str) -> np.ndarray:
    text = text.strip().strip("()[]{}")
    return np.array([int(x) for x in text.replace(",", " ").split()], dtype=np.int64)


def parse_cube(text: str) -> np.ndarray:
    """A 2x2x2 sign tableau such as ``"+- 00 / -+ 00"`` as a length-8 vector.

    The first line holds positions 0,1 then 2,3; the second line 4,5 then 6,7.
    """
    sym = {"+": 1, "-": -1, "0": 0}
    lines = [ln.split() for ln in text.replace("/", "\n").strip().splitlines() if ln.strip()]
    if len(lines) != 2 or any(len(ln) != 2 or any(len(b) != 2 for b in ln) for ln in lines):
        raise ValueError(f"cannot parse cube {text!r}")
    return np.array([sym[ch] for ln in lines for blk in ln for ch in blk], dtype=np.int64)


def format_cube(v) -> str:
    sym = {1: "+", -1: "-", 0: "0"}
    s = "".join(sym[int(x)] for x in v)
    return f"{s[0:2]} {s[2:4]} / {s[4:6]} {s[6:8]}"


# -- symmetry -----------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryGroup:
    """Group generated by node permutations and state switches on k binary nodes.

    ``column_permutations`` are tuples ``p`` sending node ``i`` to ``p[i-1]``;
    ``state_switches`` are tuples of nodes whose values flip together.
    """

    k: int
    column_permutations: tuple[tuple[int, ...], ...] = ()
    state_switches: tuple[tuple[int, ...], ...] = ()

    def generators(self) -> list[np.ndarray]:
        gens = []
        n = 1 << self.k
        for p in self.column_permutations:
            if sorted(p) != list(range(1, self.k + 1)):
                raise ValueError(f"{p} is not a permutation of the nodes")
            img = np.empty(n, dtype=np.int64)
            for i in range(n):
                x = state_of(i, self.k)
                y = [0] * self.k
                for a in range(self.k):
                    y[p[a] - 1] = x[a]
                img[i] = tensor_index(y)
            gens.append(img)
        for S in self.state_switches:
            mask = sum(1 << (v - 1) for v in S)
            gens.append(np.arange(n, dtype=np.int64) ^ mask)
        return gens

    def elements(self) -> list[np.ndarray]:
        """All group elements as index maps, by closure under the generators."""
        n = 1 << self.k
        ident = np.arange(n, dtype=np.int64)
        gens = self.generators()
        seen = {ident.tobytes(): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    c = h[g]
                    key = c.tobytes()
                    if key not in seen:
                        seen[key] = c
                        nxt.append(c)
            frontier = nxt
        return list(seen.values())

    @property
    def order(self) -> int:
        return len(self.elements())


def act(perm: np.ndarray, v) -> np.ndarray:
    """Image of a coefficient vector: the entry at state i moves to perm[i]."""
    v = np.asarray(v, dtype=np.int64)
    out = np.zeros_like(v)
    out[perm] = v
    return out


def orbit(v, G: SymmetryGroup) -> list[np.ndarray]:
    """Distinct sign-canonical images of ``v``, sorted lexicographically."""
    seen = {}
    for g in G.elements():
        w = canonical_sign(act(g, v))
        seen.setdefault(tuple(w.tolist()), w)
    return [seen[key] for key in sorted(seen)]


def triangle_group() -> SymmetryGroup:
    """S_3 on nodes 1-3 and independent switches of all three, on 3 nodes."""
    return SymmetryGroup(3, ((2, 1, 3), (1, 3, 2)), ((1,), (2,), (3,)))


# -- parameterized families ----------------------------------------------------

def _instantiate(row: str, values: dict[str, int]) -> str:
    out = []
    for ch in row:
        if ch in "01":
            out.append(ch)
        elif ch.islower():
            out.append(str(values[ch]))
        elif ch.isupper():
            out.append(str(1 - values[ch.lower()]))
        else:
            raise ValueError(f"bad tableau symbol {ch!r}")
    return "".join(out)


def family_symbols(rows: Iterable[str]) -> list[str]:
    return sorted({ch.lower() for r in rows for ch in r if ch.isalpha()})


def expand_family(positive: Sequence[str], negative: Sequence[str],
                  bound: Sequence[str] | None = None) -> list[np.ndarray]:
    """All instantiations of a parameterized tableau.

    Rows use ``0``/``1`` and letters; a lowercase letter is a parameter over
    {0,1} and the matching uppercase letter its complement (the overbar).
    Zero moves are dropped and duplicates removed after sign canonicalization.
    """
    rows = list(positive) + list(negative)
    syms = family_symbols(rows)
    if bound is not None:
        unbound = set(syms) - set(bound)
        if unbound:
            raise ValueError(f"unbound symbols {sorted(unbound)}")
    k = len(rows[0]) if rows else 0
    out = {}
    for vals in itertools.product((0, 1), repeat=len(syms)):
        env = dict(zip(syms, vals))
        t = Tableau(tuple(_instantiate(r, env) for r in positive),
                    tuple(_instantiate(r, env) for r in negative))
        v = from_tableau(t, k)
        if v.any():
            w = canonical_sign(v)
            out.setdefault(tuple(w.tolist()), w)
    return [out[key] for key in sorted(out)]
