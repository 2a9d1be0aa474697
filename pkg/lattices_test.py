import numpy as np
import pytest

from collections import Counter
from exact import rf_expand
from fractions import Fraction
from lattices import alpha_count, birkhoff_count, birkhoff_oracle, ecard, \
    ecard_oracle, enumerate_hnf, enumerate_sublattices, enumerate_superlattices, \
    enumerate_symplectic_cosets, hecke_class, hermite_delta, hnf, \
    hs_series_coefficient, hs_series_formula, hs_series_oracle, \
    index_series_specialisation, inverse_transpose, lagrangian_count_oracle, \
    local_smith_type, psi_omega, psi_omega_oracle, smith_type, standard_form, \
    symplectic_representative, type_ab, wn_minimal_pair, wn_sets, xi_formula, xi_oracle
from qcombinat import Partition
from util import ContainmentError, NotHorizontalStrip, RangeError, SingularMatrix, SizeLimit


def test_hnf_reduces_above_pivots():
    assert hnf([[2, 1], [0, 1]]) == ((2, 0), (0, 1))
    assert hnf([[0, 1], [1, 0]]) == ((1, 0), (0, 1))
    assert hnf([[4, 6], [2, 2]]) == ((2, 0), (0, 2))


def test_hnf_singular():
    with pytest.raises(SingularMatrix):
        hnf([[1, 2], [2, 4]])


def test_smith_types_agree():
    M = [[2, 0], [0, 4]]
    assert smith_type(M, 2) == Partition((2, 1))
    assert local_smith_type(M, 2) == Partition((2, 1))
    assert local_smith_type([[1, 1], [0, 4]], 2) == Partition((2,))


def test_inverse_transpose():
    assert inverse_transpose([[2, 0], [0, 1]]) == ((Fraction(1, 2), 0), (0, 1))
    assert inverse_transpose([[2, 1], [0, 1]]) == ((Fraction(1, 2), 0), (Fraction(-1, 2), 1))


@pytest.mark.parametrize('n,p,m,count', [(2, 2, 1, 3), (2, 2, 2, 7), (3, 2, 1, 7), (2, 3, 1, 4)])
def test_sublattice_counts(n, p, m, count):
    assert len(enumerate_sublattices(n, p, m)) == count


def test_sublattice_types_and_exponent_bound():
    records = enumerate_sublattices(2, 2, 2)
    assert Counter(rec.type.parts for rec in records) == {(2,): 6, (1, 1): 1}
    bounded = enumerate_sublattices(2, 2, 2, max_exponent=1)
    assert [rec.basis for rec in bounded] == [((2, 0), (0, 2))]


def test_sublattice_record_json():
    rec = enumerate_sublattices(2, 2, 1)[0]
    assert rec.to_json() == {'basis': [[1, 0], [0, 2]], 'type': [1], 'delta': [0, 1], 'index': 2}


def test_enumeration_size_limit():
    with pytest.raises(SizeLimit):
        enumerate_hnf(3, 64, limit=10)


def test_superlattices_contain_the_integers():
    for g in enumerate_superlattices(2, 4):
        dual = np.array(inverse_transpose(g), dtype=object)
        assert (dual.dot(np.array(g, dtype=object).T) == np.eye(2, dtype=int)).all()
    assert len(enumerate_superlattices(2, 4)) == 7


@pytest.mark.parametrize('lam,mu,expected', [((2, 1), (1,), 3), ((1, 1), (1,), 3), ((2,), (1,), 1)])
def test_birkhoff_count(lam, mu, expected):
    lam, mu = Partition(lam), Partition(mu)
    assert birkhoff_count(lam, mu, 2) == expected
    assert birkhoff_oracle(lam, mu, 2) == expected


def test_birkhoff_containment():
    with pytest.raises(ContainmentError):
        birkhoff_count(Partition((1,)), Partition((2,)), 2)


@pytest.mark.parametrize('n', [2, 3])
def test_alpha_count_matches_enumeration(n):
    for a in range(n + 1):
        for b in range(n - a + 1):
            target = type_ab(a, b)
            found = sum(1 for rec in enumerate_sublattices(n, 2, a + 2 * b, 2)
                        if rec.type == target)
            assert alpha_count(n, a, b, 2) == found


def test_alpha_count_range():
    assert alpha_count(2, 1, 0, 2) == 3
    assert alpha_count(2, 0, 1, 2) == 6
    with pytest.raises(RangeError):
        alpha_count(2, 2, 1, 2)


@pytest.mark.parametrize('ell', [0, 1, 2, 3])
def test_psi_omega_matches_oracle(ell):
    n = 2
    for a in range(n + 1):
        for b in range(n - a + 1):
            assert psi_omega(n, a, b, ell, 2) == psi_omega_oracle(n, a, b, ell, 2)


@pytest.mark.parametrize('lam,mu,expected', [((1,), (), 2), ((1,), (1,), 1),
                                             ((2, 1), (1,), None), ((1, 1), (1,), None)])
def test_ecard_matches_oracle(lam, mu, expected):
    lam, mu = Partition(lam), Partition(mu)
    value = ecard(lam, mu, 2, 2)
    assert value == ecard_oracle(lam, mu, 2, 2)
    if expected is not None:
        assert value == expected


def test_ecard_rejects_non_strips():
    with pytest.raises(NotHorizontalStrip):
        ecard(Partition((2, 2)), Partition((1,)), 2, 2)


def test_wn_sets_and_minimal_pair():
    lam, mu = Partition((1,)), Partition()
    assert wn_sets(lam, mu) == (frozenset({1}), frozenset())
    assert wn_minimal_pair(2, {1}, set()) == (lam, mu)
    with pytest.raises(RangeError):
        wn_minimal_pair(2, set(), {1})


def test_hs_series_coefficients_match_enumeration():
    oracle = hs_series_oracle(2, 2, 2)
    assert oracle[((1, 0), 0)] == 1
    assert oracle[((1, 0), 1)] == 2
    for (inc, d), count in oracle.items():
        assert hs_series_coefficient(2, inc, d, 2) == count


@pytest.mark.parametrize('n,p,through,count', [(1, 2, False, 3), (1, 3, False, 4),
                                               (2, 2, False, 15), (2, 2, True, 3)])
def test_lagrangian_counts(n, p, through, count):
    assert lagrangian_count_oracle(n, p, through_line=through) == count


def test_hecke_class():
    assert hecke_class(2, Partition((1, 1)), 1) == 0
    assert hecke_class(1, Partition((1, 1)), 2) == 1
    assert hecke_class(2, Partition((2, 1, 1)), 2) == 1
    assert hecke_class(2, Partition((1, 1, 1, 1)), 2) == 2
    assert hecke_class(2, Partition((2, 2)), 2) is None
    assert hecke_class(1, Partition((2,)), 2) is None


def test_symplectic_cosets_n1():
    cosets = enumerate_symplectic_cosets(1, 2, 1)
    assert len(cosets) == 3
    assert all(c.hecke_class == 0 for c in cosets)
    square = enumerate_symplectic_cosets(1, 2, 2)
    assert len(square) == 7
    assert Counter(c.hecke_class for c in square) == {None: 6, 1: 1}


def test_symplectic_cosets_n2_similitude_p():
    cosets = enumerate_symplectic_cosets(2, 2, 1)
    assert len(cosets) == 15
    assert cosets[0].to_json()['similitude'] == 2


@pytest.mark.slow
def test_symplectic_cosets_n2_similitude_p2():
    cosets = enumerate_symplectic_cosets(2, 2, 2)
    assert Counter(c.hecke_class for c in cosets) == {2: 1, 1: 30, None: 120}


@pytest.mark.parametrize('n,p,m', [(1, 2, 1), (1, 3, 1), (2, 2, 1), (1, 2, 2)])
def test_symplectic_representative(n, p, m):
    J = standard_form(n)
    for coset in enumerate_symplectic_cosets(n, p, m):
        g = symplectic_representative(coset)
        gram = np.array(g, dtype=object).dot(J).dot(np.array(g, dtype=object).T)
        assert (gram == coset.similitude * J).all()
        assert hnf(g) == coset.rep


def test_xi_small():
    assert xi_formula(2, 1, 2, 1) == 14
    assert xi_formula(2, 1, 2, 2) == 1
    assert xi_formula(1, 1, 2, 1) == xi_oracle(1, 1, 2, 1) == 1
    assert xi_formula(1, 1, 2, 2) == xi_oracle(1, 1, 2, 2) == 0
    with pytest.raises(RangeError):
        xi_oracle(1, 1, 2, 3)


@pytest.mark.slow
@pytest.mark.parametrize('k,i', [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_xi_matches_oracle_n2(k, i):
    assert xi_oracle(2, k, 2, i) == xi_formula(2, k, 2, i)


def test_hermite_delta():
    rec = enumerate_sublattices(2, 2, 1)[0]
    assert hermite_delta(rec) == (0, 1)


@pytest.mark.parametrize('n', [2, 3])
def test_hs_series_counts_sublattices_by_index(n):
    series = rf_expand(hs_series_formula(n, *index_series_specialisation(n)), 2)
    assert series.evaluate(2) == [len(enumerate_sublattices(n, 2, m)) for m in range(3)]
