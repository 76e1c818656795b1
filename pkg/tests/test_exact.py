import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tfpmarkov import exact

small = st.integers(-5, 5)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_hnf_shape_and_pivots():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    H, U = exact.hnf(A)
    assert exact.matmul(U, A) == H
    assert abs(exact.det(U)) == 1
    piv = exact.pivots([r for r in H if any(r)])
    for k, p in enumerate(piv):
        assert H[k][p] > 0
        for i in range(k):
            assert 0 <= H[i][p] < H[k][p]


def test_rank_and_det():
    assert exact.rank([[1, 2], [2, 4]]) == 1
    assert exact.det([[2, 1], [1, 1]]) == 1
    assert exact.det([[0, 1], [1, 0]]) == -1
    assert exact.rank([[0, 0, 0]]) == 0


def test_kernel_of_all_ones_row():
    K = exact.kernel_lattice([[1, 1, 1]], 3)
    assert K.rank == 2
    for k in K.matrix():
        assert sum(k) == 0
    assert [1, -1, 0] in K
    assert [1, 1, 0] not in K


def test_kernel_saturated():
    # 2x = 2y has kernel spanned by (1, 1), not (2, 2)
    K = exact.kernel_lattice([[2, -2]], 2)
    assert K.matrix() == [[1, 1]]


def test_lattice_coordinates_round_trip():
    L = exact.LatticeBasis.spanned_by([[2, 0, 1], [0, 3, 1]], 3)
    v = [4, -3, 1]
    c = exact.lattice_coordinates(L, v)
    assert c is not None
    assert [sum(ci * g[j] for ci, g in zip(c, L.matrix())) for j in range(3)] == v
    assert exact.lattice_coordinates(L, [1, 0, 0]) is None


def test_solve_integer():
    x = exact.solve_integer([[2, 4]], [6])
    assert 2 * x[0] + 4 * x[1] == 6
    assert exact.solve_integer([[2]], [3]) is None
    assert exact.solve_integer([[2, 4]], [5]) is None


def test_primitive():
    assert exact.primitive([4, -6, 0]) == [2, -3, 0]
    assert exact.primitive([0, 0]) == [0, 0]


def test_matrix_file_round_trip(tmp_path):
    A = [[1, -2, 3], [0, 0, 7]]
    p = tmp_path / "a.mat"
    exact.write_matrix(p, A, 3)
    assert p.read_text().splitlines()[0].split() == ["2", "3"]
    assert exact.read_matrix(p) == A


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_hnf_unimodular(A):
    H, U = exact.hnf(A)
    assert exact.matmul(U, A) == H
    assert abs(exact.det(U)) == 1


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_rank(A):
    n = len(A[0])
    K = exact.kernel_lattice(A, n)
    assert K.rank == n - exact.rank(A)
    for k in K.matrix():
        assert not any(exact.matvec(A, k))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_integer_finds_image(A, x):
    x = x[:len(A[0])]
    b = exact.matvec(A, x)
    y = exact.solve_integer(A, b)
    assert y is not None and exact.matvec(A, y) == b
