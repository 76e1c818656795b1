import itertools

import numpy as np
import pytest

from tfpmarkov import exact, fiber, markov, model, notation, reference


def test_two_by_two():
    A = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
    G = markov.markov_basis(A)
    assert G.as_set() == {(1, -1, -1, 1)}


def test_twisted_cubic():
    # monomial curve (t^3, t^2 s, t s^2, s^3): three quadrics
    A = np.array([[3, 2, 1, 0], [0, 1, 2, 3]])
    G = markov.markov_basis(A)
    assert markov.degree_stats(G) == {2: 3}
    assert markov.is_markov_basis(A, G.array(), 6)


def test_non_normal_curve_needs_higher_degree():
    # (t^4, t^3 s, t s^3, s^4): the Markov basis has a cubic
    A = np.array([[4, 3, 1, 0], [0, 1, 3, 4]])
    G = markov.markov_basis(A)
    assert G.max_degree() == 3
    assert markov.is_markov_basis(A, G.array(), 8)
    assert not markov.is_markov_basis(A, G.truncate(2).array(), 8)


def test_three_star():
    G = markov.markov_basis(model.named_design("three-star"))
    assert markov.degree_stats(G) == {2: 18}


def test_k4_tilde_against_listing():
    G = markov.markov_basis(model.named_design("k4tilde"))
    assert markov.degree_stats(G) == {4: 12, 6: 8}
    ref = {tuple(notation.canonical_sign(np.array(v)).tolist()) for v in reference.KERNEL_BASIS_K4_TILDE}
    assert G.as_set() == ref


def test_minimize_drops_redundant_moves():
    A = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])
    m = np.array([1, -1, -1, 1])
    ms = markov.minimize([m, 2 * m], A)
    assert ms.as_set() == {(1, -1, -1, 1)}


def test_minimize_priority():
    # three tables in one fiber; any two of the three moves suffice
    A = np.array([[1, 1, 1]])
    moves = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]
    keep_first = markov.minimize(moves, A)
    assert len(keep_first) == 2
    drop = (1, -1, 0)
    ms = markov.minimize(moves, A, priority=lambda v: 1 if v == drop else 0)
    assert drop not in ms.as_set()


def test_minimize_rejects_non_kernel():
    with pytest.raises(ValueError):
        markov.minimize([(1, 0)], np.array([[1, 1]]))


def test_lattice_without_unit_pivots():
    with pytest.raises(ValueError):
        markov.lattice_markov_basis([[2, 1]])


def test_grading_matrix():
    L = [[1, -1, 0], [0, 1, -1]]
    A = markov.grading_matrix(L)
    assert (A >= 0).all()
    assert not (A @ np.array(L).T).any()
    with pytest.raises(ValueError):
        markov.grading_matrix([[1, 1]])


def test_lattice_basis_of_projected_system():
    # Markov basis of a lattice spanned by columns with a unit block
    L = [[1, 0, 1, -1], [0, 1, 1, -1]]
    G = markov.lattice_markov_basis(L)
    A = markov.grading_matrix(L)
    ms = markov.minimize(G, A)
    # this grading is not homogeneous, so check small fibers one by one
    w = markov.positive_grading(A)
    assert (w > 0).all()
    with pytest.raises(ValueError):
        fiber.markov_degree_check(A, ms.array(), 4)
    for t in itertools.product(range(3), repeat=4):
        f = fiber.enumerate_fiber(A, A @ np.array(t))
        assert fiber.is_connected(f, ms.array()).connected


def test_positive_grading_homogeneous():
    A = np.array([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert markov.positive_grading(A).tolist() == [1, 1, 1, 1]


def test_move_file_round_trip(tmp_path):
    G = markov.markov_basis(model.named_design("three-star"))
    markov.write_moves(tmp_path / "s.mar", G)
    assert markov.read_moves(tmp_path / "s.mar").as_set() == G.as_set()


def test_moveset_canonical():
    ms = markov.MoveSet([(-1, 1), (1, -1), (0, 0)])
    assert len(ms) == 1 and ms.moves[0].vector == (1, -1)
    assert (-1, 1) in ms
