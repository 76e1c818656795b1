import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tfpmarkov import fiber, markov, model


def box_scan(M, b):
    top = int(b.max()) if b.size else 0
    return sorted(x for x in itertools.product(range(top + 1), repeat=M.shape[1]) if (M @ np.array(x) == b).all())


def test_two_by_two_independence():
    # row and column sums of a 2x2 table
    M = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
    f = fiber.enumerate_fiber(M, np.array([2, 2, 2, 2]))
    assert len(f) == 3
    assert [tuple(t) for t in f.tables] == sorted(tuple(t) for t in f.tables)
    basic = np.array([[1, -1, -1, 1]])
    assert fiber.is_connected(f, basic).connected
    rep = fiber.is_connected(f, np.zeros((0, 4), np.int64))
    assert rep.component_count == 3 and rep.witness_disconnection is not None


def test_cap():
    M = np.array([[1, 1, 1, 1]])
    with pytest.raises(fiber.CapExceeded):
        fiber.enumerate_fiber(M, np.array([10]), cap=5)


def test_bad_margin():
    M = np.array([[1, 1]])
    with pytest.raises(ValueError):
        fiber.enumerate_fiber(M, np.array([-1]))
    with pytest.raises(ValueError):
        fiber.enumerate_fiber(M, np.array([1, 1]))


def test_first_solution():
    M = np.array([[2, 3]])
    assert fiber.first_solution(M, np.array([1])) is None
    t = fiber.first_solution(M, np.array([7]))
    assert (M @ t == 7).all()


def test_margin_counts_k32():
    # distinct margins of K_{3,2} tables of total 1, 2, 3
    B = model.named_design("k3n:2").matrix
    counts = {d: len(m) for d, m in fiber.margins_by_degree(B, 3)}
    assert counts == {1: 32, 2: 484, 3: 4640}


def test_degree_check_finds_missing_moves():
    B = model.named_design("three-star")
    G = markov.markov_basis(B)
    assert fiber.markov_degree_check(B, G.array(), 4).passed
    rep = fiber.markov_degree_check(B, G.array()[1:], 4)
    assert not rep.passed and rep.failed_degree == 2
    a, b = rep.witness
    assert (B.matrix @ a == B.matrix @ b).all()


def test_essential_degree_three_star():
    B = model.named_design("three-star")
    G = markov.markov_basis(B)
    d, reps = fiber.essential_degree(B, G.array(), 4)
    assert d == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(2, 4).flatmap(lambda c: st.tuples(
    st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r),
    st.lists(st.integers(0, 2), min_size=c, max_size=c)))))
def test_enumeration_matches_box_scan(data):
    M, t = data
    M = np.array(M)
    M[0] = 1  # keeps fibers finite
    b = M @ np.array(t)
    f = fiber.enumerate_fiber(M, b)
    assert sorted(map(tuple, f.tables.tolist())) == box_scan(M, b)
