import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tfpmarkov import fiber, markov, model, notation, reference, tfp


@pytest.fixture(scope="module")
def pfs():
    return tfp.projected_fiber_system()


@pytest.fixture(scope="module")
def pf_basis(pfs):
    return tfp.pf_markov_basis(pfs)


def canon(v):
    return tuple(notation.canonical_sign(np.asarray(v)).tolist())


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=8, max_size=8))
def test_relations_hold_for_any_triangle_margin(y):
    assert tfp.relations_hold(y)
    y = np.array(y)
    u = tfp.u_of_y(y)
    assert np.array_equal(tfp.y_of_u(u, int(y.sum()), tfp.one_margins(y)), y)


def test_inequality_rows(pfs):
    assert sorted(map(tuple, pfs.D.tolist())) == sorted(reference.PF_INEQUALITY_ROWS)
    assert pfs.augmented_rows.tolist() == [[-2, -2, -2, -2], [2, 2, 2, 2]]


def random_star_margins(B, rng, k):
    rows = B.matrix[8:]
    for _ in range(k):
        t = rng.integers(0, 2, size=16) * rng.integers(0, 2, size=16)
        yield rows @ t


def test_projected_fiber_matches_brute_force(pfs):
    B = model.named_design("k4tilde")
    rng = np.random.default_rng(7)
    margins = list(random_star_margins(B, rng, 40))
    margins += [np.asarray(f.base.vector)[8:] for f in pfs.families]
    for p in margins:
        want = {tuple(y) for y in map(lambda a: a.tolist(), tfp.projected_fiber(B, p))}
        got = {tuple(y.tolist()) for y in pfs.solutions(p)}
        assert got == want, p


def test_facets_alone_admit_the_hole(pfs):
    # at the hole's star margins the facet inequalities allow one extra point
    B = model.named_design("k4tilde")
    p = np.asarray(pfs.families[0].base.vector)[8:]
    total, ym = pfs.margin_parts(p)
    c = pfs.rhs(p)[: len(pfs.D)]
    loose = {tuple(tfp.y_of_u(u, total, ym).tolist())
             for u in itertools.product(range(total + 1), repeat=4) if (pfs.D @ np.array(u) >= c).all()}
    tight = {tuple(y.tolist()) for y in tfp.projected_fiber(B, p)}
    assert tight < loose
    assert tuple(reference.HOLE1_TRIANGLE) in loose - tight


def test_pf_basis(pf_basis):
    assert len(pf_basis) == 16
    assert markov.degree_stats(pf_basis) == {2: 12, 4: 4}
    ref = {canon(notation.parse_cube(c)) for c in reference.PF_BASIS_CUBES}
    assert pf_basis.as_set() == ref


def test_pf_orbits():
    sizes = sorted(len(o) for o in tfp.pf_orbit_decomposition())
    assert sizes == [1, 3, 12]


def test_pf_move_from_u():
    g = tfp.pf_move_from_u((1, 0, 0, 0))
    assert g.sum() == 0
    assert tfp.relations_hold(np.maximum(g, 0) + 2)


@pytest.mark.parametrize("g", list(reference.LIFTS))
def test_lifts_match_listing(g):
    L = tfp.lifts(g)
    assert {canon(l.vector) for l in L} == {canon(v) for v in reference.LIFTS[g]}
    assert all(tfp.lift_equations_hold(l) for l in L)
    assert all((l.excess() >= 0).all() for l in L)


def test_lift_of_non_move_fails():
    with pytest.raises(ValueError):
        tfp.lifts((1, 0, 0, 0, 0, 0, 0, -1))


def test_excess_bounds_hold_for_single_lifts(pf_basis):
    for g in pf_basis.array():
        bd = tfp.excess_bound(g)
        for l in tfp.lifts(g):
            assert (l.excess() <= bd).all()
    with pytest.raises(KeyError):
        tfp.excess_bound((0,) * 8)


def test_lift_connects_small_fibers():
    g = next(iter(reference.LIFTS))
    ok, checked = tfp.lift_is_connecting(g, max_total=3)
    assert ok and checked > 0


def test_glue_one_factor_is_the_lift():
    g = next(iter(reference.LIFTS))
    for l in tfp.lifts(g):
        assert tfp.glue([l]).vector == l.vector
        assert canon(l.vector) in tfp.glue_all([l])


def test_glue_is_a_kernel_move_with_projection_g():
    B = model.named_design("k3n:2").matrix
    for g in list(reference.LIFTS)[:2]:
        L = tfp.lifts(g)
        for a, b in itertools.product(L[:4], repeat=2):
            gm = tfp.glue([a, b])
            v = np.asarray(gm.vector)
            assert not (B @ v).any()
            assert np.array_equal(tfp.triangle_projection(v), g)
            # every glue has degree |g+| + |xi|
            xi = np.maximum(a.excess(), b.excess())
            assert gm.degree == np.maximum(g, 0).sum() + xi.sum()
            for w in tfp.glue_all([a, b]):
                assert sum(x for x in w if x > 0) == gm.degree
                assert not (B @ np.array(w)).any()


def test_glue_validation():
    a = tfp.lifts(list(reference.LIFTS)[0])[0]
    b = tfp.lifts(list(reference.LIFTS)[1])[0]
    with pytest.raises(ValueError):
        tfp.glue([a, b])
    with pytest.raises(ValueError):
        tfp.glue([])


def test_xi_excess_of_zero():
    assert not tfp.xi_excess(np.zeros(32, dtype=np.int64)).any()


def test_degree_bound():
    assert [tfp.degree_bound(n) for n in (1, 2, 3, 4, 5)] == [6, 8, 10, 12, 12]
    with pytest.raises(ValueError):
        tfp.degree_bound(0)


def test_glue_degree_stats_within_bound():
    for N in (1, 2):
        stats = tfp.glue_degree_stats(N)
        assert max(stats) <= tfp.degree_bound(N)
    assert tfp.glue_degree_stats(1) == {2: 24, 4: 95, 6: 80}


def test_kernel_lifts():
    assert len(tfp.kernel_lifts(1)) == 20
    c, g = tfp.kernel_lifts(2, constant=True), tfp.kernel_lifts(2)
    assert len(c) == 80
    assert c.as_set() <= g.as_set()
    B = model.named_design("k3n:2").matrix
    assert not (B @ g.array().T).any()


def test_quadratic_swaps():
    B = model.named_design("k3n:2").matrix
    Q = tfp.quadratic_swaps(2)
    assert markov.degree_stats(Q) == {2: len(Q)}
    assert not (B @ Q.array().T).any()
    assert len(tfp.quadratic_swaps(1)) == 0


def test_assembled_basis_n1():
    asm = tfp.assemble_markov_basis(1)
    ref = markov.markov_basis(model.named_design("three-star"))
    assert markov.degree_stats(asm.basis) == {2: 18}
    assert fiber.markov_degree_check(model.named_design("k3n:1"), asm.basis.array(), 6).passed
    assert asm.basis.as_set() <= asm.union().as_set()
    assert len(ref) == 18


def test_kernel_chain_replays():
    Q = tfp.quadratic_moves(2)
    for vals in itertools.product((0, 1), repeat=4):
        st_ = tfp.instantiate_chain(reference.KERNEL_REDUCTION_CHAIN, dict(zip("abce", vals)))
        assert tfp.replay_chain(st_, Q)
        m = st_[-1] - st_[0]
        assert canon(m) in tfp.kernel_lifts(2, constant=True).as_set()


def test_reduce_by_quadratics_finds_chain():
    Q = tfp.quadratic_moves(2)
    st_ = tfp.instantiate_chain(reference.KERNEL_REDUCTION_CHAIN, dict(zip("abce", (0, 0, 0, 0))))
    tr = tfp.reduce_by_quadratics(st_[-1] - st_[0], Q)
    assert tr.reducible and tr.steps == 4
    assert tfp.replay_chain(tr.states, Q)


def test_replay_rejects_bad_step():
    Q = tfp.quadratic_moves(1)
    a = np.zeros(8 << 1, dtype=np.int64)
    b = a.copy()
    b[0] = 1
    assert not tfp.replay_chain([a, b], Q)


def test_canonical_glue_with_constant_kernel_lifts_is_not_markov():
    # sorted-pairing glues padded with zeros plus constant-column kernel
    # lifts leave a degree-4 fiber of K_{3,2} disconnected
    B = model.named_design("k3n:2")
    can = {canon(g.vector) for g in tfp.all_glues(2)}
    moves = can | tfp.quadratic_swaps(2).as_set() | tfp.kernel_lifts(2, constant=True).as_set()
    rep = fiber.markov_degree_check(B, markov.MoveSet(list(moves), 32).truncate(4).array(), 4)
    assert not rep.passed and rep.failed_degree == 4


def test_assembled_basis_n2_up_to_degree_4():
    B = model.named_design("k3n:2")
    asm = tfp.assemble_markov_basis(2, maxdeg=4)
    assert markov.degree_stats(asm.basis) == {2: 44, 4: 420}
    assert fiber.markov_degree_check(B, asm.basis.array(), 4).passed
    # constant-column kernel lifts are all redundant, general ones are not
    assert not (asm.basis.as_set() & asm.constant_kernel.as_set())
    assert asm.basis.as_set() & (asm.kernel.as_set() - asm.glues.as_set())
