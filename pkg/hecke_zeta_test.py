import pytest

from exact import BinomialQuotient, BivariatePoly, LaurentPoly, Y
from hecke_zeta import SatakeParams, check_difference_identity, check_functional_eq, \
    check_igusa_l0, check_igusa_ln, check_phi_delta, check_phi_ratio, check_reflection, \
    delta_poly, eigenvalue_poly, igusa_form, local_zeta, phi_A, phi_C, \
    satake_image_eval, tamagawa_check, zeta_A, zeta_C, zeta_C_commden, \
    zeta_series_formula
from util import RangeError, SizeLimit


def bq(terms, factors):
    return BinomialQuotient(BivariatePoly(terms), factors)


def test_delta_poly():
    assert delta_poly(2, 0) == (1 + Y) * (1 + Y ** 2)
    assert delta_poly(2, 1) == Y + Y ** 2 + Y ** 3 + Y ** 4
    assert delta_poly(1, 1) == 1
    with pytest.raises(RangeError):
        delta_poly(2, 3)


@pytest.mark.parametrize('ell', range(-1, 5))
def test_phi_c_small_rank(ell):
    assert phi_C(1, 0, ell) == Y ** ell + Y
    assert phi_C(1, 1, ell) == Y ** ell
    assert phi_C(2, 0, ell) == (Y ** ell + Y ** 2) * (1 + Y)
    assert phi_C(2, 2, ell) == Y ** ell


@pytest.mark.parametrize('ell,expected', [
    (0, Y + Y ** 2 + Y ** 3 + Y ** 4),
    (1, 2 * Y ** 4 + Y ** 3 + 2 * Y ** 2 - Y),
    (2, Y ** 5 + 3 * Y ** 4 + Y ** 3 - Y ** 2),
    (3, 2 * Y ** 6 + Y ** 5 + 2 * Y ** 4 - Y ** 3),
    (4, Y ** 5 + Y ** 6 + Y ** 7 + Y ** 8),
])
def test_phi_c_rank_two_middle_generator(ell, expected):
    assert phi_C(2, 1, ell) == expected


def test_phi_a():
    assert phi_A(2, 1, 0) == 1 + Y
    assert phi_A(2, 2, 3) == Y ** 3
    assert phi_A(3, 1, 1) == 2 * Y + Y ** 2
    with pytest.raises(RangeError):
        phi_A(2, 0, 1)


def test_eigenvalue_poly():
    phi = eigenvalue_poly('C', 2, 1, 2)
    assert phi(2) == 84
    assert phi.to_json()['type'] == 'C'
    with pytest.raises(ValueError):
        eigenvalue_poly('B', 2, 1, 2)


@pytest.mark.parametrize('n', range(1, 5))
def test_phi_ratio_and_delta(n):
    for ell in range(2 * n + 1):
        for k in range(n + 1):
            assert check_phi_ratio('C', n, k, ell)
        for k in range(1, n):
            assert check_phi_ratio('A', n, k, ell)
    for k in range(n + 1):
        assert check_phi_delta(n, k)


def test_satake_params():
    assert SatakeParams(3, 1).exponents == (1, 1, 2, 2)
    assert SatakeParams(2, 0).evaluate(2) == (1, 2, 4)


@pytest.mark.parametrize('n,k,ell,p,value', [(2, 1, 0, 2, 30), (1, 1, 1, 2, 2), (2, 1, 2, 2, 84)])
def test_satake_values(n, k, ell, p, value):
    assert satake_image_eval(n, k, ell, p) == value


@pytest.mark.parametrize('n', [1, 2, 3])
@pytest.mark.parametrize('p', [2, 3])
def test_satake_matches_phi(n, p):
    for ell in range(-1, 2 * n + 2):
        for k in range(n + 1):
            assert satake_image_eval(n, k, ell, p) == phi_C(n, k, ell)(p)
        for k in range(1, n + 1):
            assert check_difference_identity(n, k, ell, p)


@pytest.mark.parametrize('n', [1, 2])
def test_satake_oracle_route(n):
    for ell in range(2 * n + 1):
        for k in range(n + 1):
            assert satake_image_eval(n, k, ell, 2, oracle=True) == phi_C(n, k, ell)(2)


@pytest.mark.parametrize('ell', range(4))
def test_zeta_rank_one(ell):
    assert zeta_C(1, ell).quotient == bq({(0, 0): 1}, [(1, 1), (ell, 1)])


@pytest.mark.parametrize('ell', range(6))
def test_zeta_rank_two(ell):
    expected = bq({(0, 0): 1, (2 + ell, 4): -1}, [(2, 2), (3, 2), (ell, 2), (1 + ell, 2)])
    assert zeta_C(2, ell).quotient == expected


def test_zeta_rank_two_special_values():
    assert zeta_C(2, 0).quotient == bq({(0, 0): 1, (1, 2): 1}, [(0, 2), (2, 2), (3, 2)])
    assert zeta_C(2, 0).series_at(2, 2) == [1, 15, 151]
    assert zeta_series_formula('C', 2, 0, 2, 2) == [1, 15, 151]


@pytest.mark.parametrize('ell', range(7))
def test_zeta_rank_three(ell):
    # exponents may coincide for particular ell, so add monomials one at a time
    monomials = [(1, 0, 0), (1, 4, 3), (1, 1 + ell, 3),
                 (-1, 3 + ell, 6), (-2, 4 + ell, 6), (-2, 6 + ell, 6), (-1, 7 + ell, 6),
                 (1, 9 + ell, 9), (1, 6 + 2 * ell, 9), (1, 10 + 2 * ell, 12)]
    numerator = BivariatePoly()
    for c, qe, te in monomials:
        numerator = numerator + BivariatePoly.monomial(qe, te, c)
    factors = [(3, 3), (5, 3), (6, 3), (ell, 3), (2 + ell, 3), (3 + ell, 3)]
    assert zeta_C(3, ell).quotient == BinomialQuotient(numerator, factors)


def test_zeta_three_three_display():
    expected = bq({(0, 0): 1, (3, 3): 1, (4, 3): 2, (5, 3): 1, (8, 6): 1},
                  [(3, 3), (5, 3), (6, 3), (6, 3)])
    assert zeta_C(3, 3).quotient == expected


@pytest.mark.parametrize('n', [1, 2, 3])
def test_zeta_methods_agree(n):
    for ell in range(2 * n + 1):
        assert zeta_C(n, ell, method='direct').quotient == zeta_C(n, ell).quotient
    assert zeta_C_commden(n, 1).to_rational() == zeta_C(n, 1).value


def test_zeta_errors():
    with pytest.raises(SizeLimit):
        zeta_C(9, 0)
    with pytest.raises(RangeError):
        zeta_C(0, 0)
    with pytest.raises(ValueError):
        zeta_C(2, 0, method='guess')
    with pytest.raises(ValueError):
        local_zeta('B', 2, 0)


def test_zeta_a():
    zeta = zeta_A(2, 1)
    assert list(zeta.expand(2).coefficients) == [LaurentPoly.const(1), 2 * Y, 3 * Y ** 2]
    assert zeta.step == 1
    assert zeta_A(3, 2).quotient.factors == ((1, 1), (2, 1), (2, 1))


def test_zeta_json_and_latex():
    zeta = zeta_C(2, 1)
    data = zeta.to_json()
    assert data['factors'] == [[1, 2], [2, 2], [2, 2], [3, 2]]
    latex = zeta.latex()
    assert 'q^{3}t^{4}' in latex
    assert '(1 - q^{2}t^{2})^{2}' in latex


@pytest.mark.parametrize('n', range(1, 5))
def test_functional_equation_and_reflection(n):
    for ell in range(2 * n + 1):
        assert check_functional_eq(n, ell)
        assert check_reflection(n, ell)


@pytest.mark.parametrize('n', range(1, 5))
def test_igusa_form_ell_zero(n):
    assert check_igusa_l0(n)


@pytest.mark.parametrize('n', [1, 2])
def test_igusa_form_ell_n(n):
    assert check_igusa_ln(n)
    with pytest.raises(RangeError):
        igusa_form(n, n + 1)


@pytest.mark.slow
@pytest.mark.parametrize('n', range(5, 9))
def test_zeta_identities_large_rank(n):
    assert check_igusa_l0(n)
    for ell in (0, 1, n, 2 * n):
        assert check_functional_eq(n, ell)


@pytest.mark.parametrize('n', [1, 2])
@pytest.mark.parametrize('p', [2, 3])
def test_tamagawa(n, p):
    assert tamagawa_check(n, p, 3)
    with pytest.raises(ValueError):
        tamagawa_check(n, p, 3, ell=1)
