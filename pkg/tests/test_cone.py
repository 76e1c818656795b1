import numpy as np
import pytest

from tfpmarkov import cone


def test_facets_of_orthant():
    fs = cone.facets([(1, 0), (0, 1)])
    assert fs.inequalities == [(1, 0), (0, 1)]
    assert fs.equations == []


def test_facets_of_skew_cone():
    fs = cone.facets([(1, 0), (1, 2)])
    assert sorted(fs.inequalities) == [(0, 1), (2, -1)]
    assert fs.contains((3, 1)) and not fs.contains((0, 1))


def test_lower_dimensional_cone():
    fs = cone.facets([(1, 1, 0), (1, 0, 1)])
    assert len(fs.equations) == 1
    assert fs.contains((2, 1, 1)) and not fs.contains((1, 0, 0))


def test_rays_round_trip():
    gens = [(1, 0, 0), (0, 1, 0), (1, 1, 2), (0, 0, 1)]
    fs = cone.facets(gens)
    rays = cone.rays_from_facets(fs, 3)
    assert set(rays) == set(cone.extreme_rays(gens))
    assert (1, 1, 2) not in rays


def test_hilbert_basis_with_hole():
    # (1,1) is in the cone and lattice of {(2,0),(0,2),(1,1)}; {(2,0),(0,2)} misses it
    assert cone.hilbert_basis([(2, 0), (0, 2), (1, 1)]).elements == [(0, 2), (1, 1), (2, 0)]
    # the lattice of (1,0), (1,2) has even second coordinates
    assert set(cone.hilbert_basis([(1, 0), (1, 2)]).elements) == {(1, 0), (1, 2)}
    assert set(cone.hilbert_basis([(1, 0), (1, 2), (1, 1)]).elements) == {(1, 0), (1, 1), (1, 2)}
    assert set(cone.hilbert_basis([(1, 0), (1, 3), (1, 1)]).elements) == {(1, 0), (1, 1), (1, 2), (1, 3)}


def test_hilbert_basis_with_lineality():
    hb = cone.hilbert_basis([(1, 0), (-1, 0), (0, 1)])
    assert set(hb.elements) == {(-1, 0), (0, 1), (1, 0)}


def test_semigroup_membership():
    gens = cone.ConeGenerators.of([(2, 0), (0, 2), (1, 1)])
    m = cone.semigroup_member(gens, (3, 1))
    assert m.member
    assert tuple(np.array(gens.generators).T @ np.array(m.certificate)) == (3, 1)
    assert not cone.semigroup_member(cone.ConeGenerators.of([(2, 0), (0, 2)]), (1, 1))
    assert cone.semigroup_member(cone.ConeGenerators.of([(1, -1), (0, 1)]), (2, -1))


def test_generator_validation():
    with pytest.raises(ValueError):
        cone.ConeGenerators.of([(0, 0)])
    with pytest.raises(ValueError):
        cone.ConeGenerators(2, ((1, 0, 0),))


def test_facet_file_round_trip(tmp_path):
    fs = cone.facets([(1, 1, 0), (1, 0, 1), (1, 0, 0)])
    cone.write_facets(tmp_path / "c.txt", fs, 3)
    back = cone.parse_facets((tmp_path / "c.txt").read_text())
    assert back.inequalities == fs.inequalities and back.equations == fs.equations
