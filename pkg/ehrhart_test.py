import os
import pytest

from ehrhart import LatticePolytope, avg_coeff, coset_representatives, count_points, \
    ehrhart_coefficient, ehrhart_poly, hecke_action, hecke_cosets_A, hecke_cosets_C, \
    tree_example
from fractions import Fraction
from hecke_zeta import phi_A, phi_C, zeta_series_formula, zeta_series_oracle
from util import DimensionLimit, UnboundedInput, ZeroCoefficient

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


def load(name):
    return LatticePolytope.from_json(os.path.join(DATA, f'{name}.json'))


@pytest.fixture(scope='module')
def quad():
    return load('quad')


@pytest.fixture(scope='module')
def hexagon():
    return load('hexagon')


@pytest.mark.parametrize('name,coeffs', [('quad', ['1', '5/2', '3/2']),
                                         ('hexagon', ['1', '3', '7']),
                                         ('unit_square', ['1', '2', '1']),
                                         ('cube4', ['1', '4', '6', '4', '1'])])
def test_ehrhart_coefficients(name, coeffs):
    assert ehrhart_poly(load(name)).to_json() == coeffs


def test_count_points(quad):
    assert count_points(quad, 0) == 1
    assert count_points(quad, 2) == 12
    assert count_points(quad, 1, boundary=True) == 5
    assert count_points(load('unit_square'), 2, boundary=True) == 8
    with pytest.raises(ValueError):
        count_points(quad, -1)


def test_lower_dimensional_polytope():
    segment = LatticePolytope(2, ((0, 0), (2, 0), (1, 0)))
    assert segment.affine_dim == 1
    assert len(segment.vertices) == 3
    assert ehrhart_poly(segment).to_json() == ['1', '2', '0']


def test_polytope_validation():
    with pytest.raises(UnboundedInput):
        LatticePolytope(2, ())
    with pytest.raises(DimensionLimit):
        LatticePolytope(5, ((0,) * 5,))
    with pytest.raises(ValueError):
        LatticePolytope(2, ((0, 0), (1,)))
    with pytest.raises(UnboundedInput):
        LatticePolytope.from_dict({'ambient': 2})


def test_polytope_json(quad):
    data = quad.to_json()
    assert data['ambient'] == 2
    assert LatticePolytope.from_dict(data) == quad


def test_coset_representatives():
    half = Fraction(1, 2)
    assert coset_representatives([[half, 0], [0, 1]]) == [(0, 0), (half, 0)]


def test_counting_methods_agree(quad):
    basis = [[Fraction(1, 2), 0], [0, 1]]
    by_transform = ehrhart_poly(quad, basis, 'transform')
    by_cosets = ehrhart_poly(quad, basis, 'cosets')
    assert by_transform == by_cosets
    assert by_transform.coefficient(2) == 3


@pytest.mark.parametrize('p', [2, 3])
@pytest.mark.parametrize('k', [0, 1])
@pytest.mark.parametrize('ell', [0, 1, 2])
@pytest.mark.parametrize('name', ['quad', 'hexagon'])
def test_type_c_eigenfunction_n1(name, ell, k, p):
    P = load(name)
    total = hecke_action(hecke_cosets_C(1, k, p), ell, P)
    assert total == phi_C(1, k, ell)(p) * ehrhart_coefficient(P, ell)


@pytest.mark.parametrize('k', [1, 2])
@pytest.mark.parametrize('ell', [0, 1, 2])
def test_type_a_eigenfunction(quad, ell, k):
    total = hecke_action(hecke_cosets_A(2, k, 2), ell, quad, route='matrix')
    assert total == phi_A(2, k, ell)(2) * ehrhart_coefficient(quad, ell)


def test_hecke_routes_agree(hexagon):
    cosets = hecke_cosets_C(1, 0, 3)
    assert len(cosets) == 4
    matrix = hecke_action(cosets, 1, hexagon, route='matrix')
    lattice = hecke_action(cosets, 1, hexagon, route='lattice')
    assert matrix == lattice
    with pytest.raises(ValueError):
        hecke_action(cosets, 1, hexagon, route='neither')


@pytest.mark.slow
@pytest.mark.parametrize('k', [0, 1, 2])
def test_type_c_eigenfunction_n2(k):
    cube = load('cube4')
    total = hecke_action(hecke_cosets_C(2, k, 2), 3, cube, route='matrix')
    assert total == phi_C(2, k, 3)(2) * ehrhart_coefficient(cube, 3)


@pytest.mark.parametrize('m,value', [(1, 1), (2, 4), (3, 6), (6, 24)])
def test_avg_coeff_type_a(m, value):
    assert avg_coeff(load('unit_square'), 1, m, 'A') == value


def test_avg_coeff_errors(quad):
    segment = LatticePolytope(2, ((0, 0), (1, 0)))
    with pytest.raises(ZeroCoefficient):
        avg_coeff(segment, 2, 2, 'A')
    with pytest.raises(ValueError):
        avg_coeff(quad, 1, 2, 'B')


def test_tree_example_quad(quad):
    example = tree_example(quad, 2, 2, ell=1)
    assert example.center == Fraction(5, 2)
    assert example.normalised == {0: 1, 1: 4, 2: 10}
    assert example.series[2] == 12
    assert len(example.rings[1]) == 3
    data = example.to_json()
    assert data['normalised'] == {'0': '1', '1': '4', '2': '10'}


def test_tree_example_hexagon(hexagon):
    example = tree_example(hexagon, 2, 2)
    assert example.center == 3
    assert example.normalised[2] == 10


def test_tree_example_needs_the_plane():
    with pytest.raises(DimensionLimit):
        tree_example(load('cube4'), 2, 1)


def test_series_oracle_matches_closed_form(quad):
    oracle = zeta_series_oracle('C', 1, 1, 2, quad, 2)
    assert oracle == [1, 4, 12]
    assert oracle == zeta_series_formula('C', 1, 1, 2, 2)
    assert zeta_series_oracle('A', 2, 1, 2, quad, 2) == zeta_series_formula('A', 2, 1, 2, 2)
