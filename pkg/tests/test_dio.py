import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tfpmarkov import dio


def solve(A, b=None, signs=None):
    return dio.minimal_inhomogeneous(dio.DioSystem.make(A, b, signs))


def test_single_equation():
    res = solve([[3, 5, -7]], [4])
    assert set(res.inhomogeneous) == {(0, 5, 3), (1, 3, 2), (2, 1, 1), (6, 0, 2)}
    assert set(res.homogeneous) == {(0, 7, 5), (1, 5, 4), (2, 3, 3), (3, 1, 2), (7, 0, 3)}


def test_free_variables():
    res = solve([[2, -2]], [2], ["free", "free"])
    assert set(res.inhomogeneous) == {(0, -1), (1, 0)}
    assert {tuple(abs(x) for x in h) for h in res.homogeneous} == {(1, 1)}


def test_bounded_system():
    res = solve([[1, 1]], [2])
    assert set(res.inhomogeneous) == {(0, 2), (1, 1), (2, 0)}
    assert res.homogeneous == []


def test_infeasible():
    assert solve([[2, 4]], [3]).inhomogeneous == []


def test_homogeneous_only():
    res = dio.minimal_homogeneous(dio.DioSystem.make([[1, -1]]))
    assert res.homogeneous == [(1, 1)]


def test_system_validation():
    with pytest.raises(ValueError):
        dio.DioSystem.make([[1, 2]], [1], ["free"])
    with pytest.raises(ValueError):
        dio.DioSystem.make([[1, 2]], [1], ["free", "maybe"])


def test_conformal_order():
    assert dio.conformally_below((1, -1, 0), (2, -1, 3))
    assert not dio.conformally_below((1, 1), (2, -1))


def test_file_round_trip(tmp_path):
    s = dio.DioSystem.make([[3, 5, -7]], [4], ["nonneg", "free", "nonneg"])
    dio.write_system(tmp_path / "h", s)
    assert dio.read_system(tmp_path / "h") == s
    assert (tmp_path / "h.mat").exists() and (tmp_path / "h.sign").exists()


def brute(A, b, box):
    A = np.asarray(A)
    cols = A.shape[1]
    pts = [x for x in itertools.product(range(box + 1), repeat=cols)]
    sols = [x for x in pts if (A @ np.array(x) == b).all()]
    hom = [x for x in pts if any(x) and not (A @ np.array(x)).any()]
    le = lambda h, x: all(a <= c for a, c in zip(h, x))
    inh = {x for x in sols if not any(le(h, x) for h in hom) and not any(y != x and le(y, x) for y in sols)}
    hmin = {x for x in hom if not any(y != x and le(y, x) for y in hom)}
    return inh, hmin


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 2).flatmap(lambda r: st.tuples(
    st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=r, max_size=r),
    st.lists(st.integers(-2, 2), min_size=r, max_size=r))))
def test_against_box_search(sys_):
    A, b = sys_
    res = solve(A, b)
    box = 6
    inh, hmin = brute(A, np.array(b), box)
    assert {x for x in res.inhomogeneous if max(x) <= box} == inh
    assert {x for x in res.homogeneous if max(x) <= box} == hmin
    for x in res.inhomogeneous:
        assert (np.array(A) @ np.array(x) == b).all()
