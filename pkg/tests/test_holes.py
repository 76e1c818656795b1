import itertools

import numpy as np
import pytest

from tfpmarkov import holes, notation, reference


def col(s):
    return sum(int(c) << i for i, c in enumerate(s))


@pytest.fixture(scope="module")
def k4():
    B, ctx = holes.k4_tilde_context()
    return B, ctx, holes.hole_families(B, ctx)


def test_standard_pairs_simple():
    # I = (x^2, xy): standard monomials 1, x and y^k
    I = holes.MonomialIdeal.of([(2, 0), (1, 1)])
    sp = holes.standard_pairs(I)
    assert {(p.root, tuple(sorted(p.free_vars))) for p in sp} == {((0, 0), (1,)), ((1, 0), ())}
    assert holes.standard_monomial_count(sp, 3, 2) == 5


def test_standard_pairs_count_matches_scan():
    I = holes.MonomialIdeal.of([(2, 1, 0), (0, 2, 1), (1, 0, 2)])
    sp = holes.standard_pairs(I)
    box = 4
    direct = sum(1 for m in itertools.product(range(box + 1), repeat=3) if not I.contains(m))
    assert holes.standard_monomial_count(sp, box, 3) == direct


def test_standard_pair_validation():
    with pytest.raises(ValueError):
        holes.StandardPair((1, 0), frozenset({0}))
    with pytest.raises(ValueError):
        holes.MonomialIdeal.of([])


def test_k4_tilde_two_families(k4):
    B, ctx, fams = k4
    assert len(fams) == 2
    dirs = {tuple(sorted(col(s) for s in d)) for d in reference.HOLE_DIRECTIONS}
    assert {f.directions for f in fams} == dirs
    assert tuple(fams[0].base.vector[:8]) == reference.HOLE1_TRIANGLE
    # star margins of the base holes are all ones
    assert all(x == 1 for f in fams for x in f.base.vector[8:])


def test_hole_identities(k4):
    B, ctx, fams = k4
    ids = {}
    for i, f in enumerate(fams):
        for name, cert in f.base.witness_identities:
            ids[name] = cert
    want = {(1, 1): "h1+h2", (2, 0): "h1+h1", (0, 2): "h2+h2"}
    for key, name in want.items():
        cols = {i for i, c in enumerate(ids[name]) if c}
        assert cols == {col(s) for s in reference.HOLE_IDENTITIES[key]}


def test_members_are_holes(k4):
    B, ctx, fams = k4
    f = fams[0]
    v = f.member(np.eye(8, dtype=np.int64)[2] * 2)
    assert ctx.is_hole(v)
    assert not ctx.is_hole(np.asarray(B.matrix[:, 0]))
    assert np.dot(f.separating_functional, v) == 0


def test_separation_small_bound(k4):
    B, ctx, fams = k4
    rep = holes.verify_separation(B, fams, bound=1, ctx=ctx)
    assert rep.passed, [c for c in rep.checks if not c[1]]
    assert rep.members == 2 * 9


def test_functionals_are_swapped_triangle_parity(k4):
    B, ctx, fams = k4
    # the functional of each family is the indicator of the other parity class
    odd = tuple(int(bin(t).count("1") % 2 == 1) for t in range(8))
    even = tuple(1 - x for x in odd)
    tri = {f.separating_functional[:8] for f in fams}
    assert tri == {odd, even}


def test_hole_ideal_is_free():
    B, ctx = holes.k4_tilde_context()
    I = holes.hole_exponent_ideal(reference_hole(), B)
    sp = holes.standard_pairs(I)
    assert len(sp) == 1 and not any(sp[0].root)


def reference_hole():
    return tuple(reference.HOLE1_TRIANGLE) + (1,) * 12


def test_projection_rows():
    B, _ = holes.k4_tilde_context()
    assert holes.projection_rows(B) == list(range(8, 20))
    with pytest.raises(ValueError):
        holes.projection_rows(np.eye(2))


def test_summary_text(k4):
    B, ctx, fams = k4
    s = holes.summary(fams[0].base.vector, B)
    assert "constant 1" in s
    assert notation.row_string(0, 3) in s
