import numpy as np
import pytest

from tfpmarkov import model, notation


def test_design_shapes():
    assert model.named_design("k4tilde").matrix.shape == (20, 16)
    assert model.named_design("three-star").matrix.shape == (12, 16)
    assert model.named_design("k3n:2").matrix.shape == (24, 32)
    assert model.named_design("k3n:3").matrix.shape == (36, 64)


def test_k3n_facet_order():
    assert model.k3n(2).facets == ((1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5))


def test_k4_tilde_facets():
    assert model.k4_tilde().facets == ((1, 2, 3), (1, 4), (2, 4), (3, 4))


def test_columns_sum_to_facet_count():
    B = model.named_design("k4tilde").matrix
    assert (B.sum(axis=0) == 4).all()


def test_margin():
    B = model.named_design("three-star")
    t = np.zeros(16, dtype=np.int64)
    t[0] = 2
    m = model.margin(B, t)
    assert m.sum() == 6
    with pytest.raises(ValueError):
        model.margin(B, -t)


def test_unknown_model():
    with pytest.raises(ValueError):
        model.named_design("k5")


def test_explicit_facets():
    c = model.build_complex([(1, 2), (2, 3), (1, 2, 3)])
    assert c.facets == ((1, 2, 3),)


def test_index_conventions():
    assert notation.tensor_index((1, 0, 1)) == 5
    assert notation.tensor_index("101") == 5
    assert notation.row_string(5, 3) == "101"
    assert notation.row_string(1, 3) == "100"
    assert notation.row_index("100") == 1
    assert notation.state_of(6, 3) == (0, 1, 1)


def test_tableau_round_trip():
    v = notation.parse_tensor("1, -1, -1, 1, 0, 0, 0, 0")
    t = notation.to_tableau(v)
    assert str(t) == "[000; 110] - [010; 100]"
    assert np.array_equal(notation.from_tableau(t), v)
    assert np.array_equal(notation.from_tableau(notation.parse_tableau(str(t))), v)


def test_cube_round_trip():
    v = notation.parse_cube("+- -+ / 00 00")
    assert v.tolist() == [1, -1, -1, 1, 0, 0, 0, 0]
    assert notation.format_cube(v) == "+- -+ / 00 00"


def test_unbalanced_tableau_rejected():
    with pytest.raises(ValueError):
        notation.to_tableau([1, 0, 0, 0, 0, 0, 0, 0])


def test_triangle_group():
    G = notation.triangle_group()
    assert G.order == 48


def test_expand_family():
    moves = notation.expand_family(["00a", "11b"], ["01a", "10b"])
    assert len(moves) == 4
    assert all(notation.degree(m) == 2 for m in moves)
    # a complemented letter
    assert len(notation.expand_family(["0a"], ["0A"])) == 1


def test_orbit_sizes():
    G = notation.triangle_group()
    xor = notation.parse_cube("+- -+ / -+ +-")
    assert len(notation.orbit(xor, G)) == 1
    quad = notation.parse_cube("+- -+ / 00 00")
    assert len(notation.orbit(quad, G)) == 6
