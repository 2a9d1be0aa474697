import pytest

from exact import BinomialQuotient, BivariatePoly, LaurentPoly, RationalFunctionQT, \
    Y, common_denominator_sum, lp_arith, rf_evaluate, rf_expand, rf_invert, \
    rf_normalize, rf_substitute_q_inverse
from fractions import Fraction
from util import NotExpandable, PoleAtPoint, ZeroDenominator


def bp(terms):
    return BivariatePoly(terms)


ONE = BivariatePoly.const(1)


def test_laurent_arithmetic():
    assert lp_arith(1 + Y, 1 - Y, 'mul') == 1 - Y ** 2
    assert lp_arith(Y, Y ** 2, 'add') == Y + Y ** 2
    assert lp_arith(Y, Y, 'sub') == LaurentPoly()
    with pytest.raises(ValueError):
        lp_arith(Y, Y, 'div')


def test_laurent_negative_powers():
    inv = Y ** -2
    assert inv.valuation == -2
    assert (inv * Y ** 2) == 1
    assert (Y + Y ** -1)(2) == Fraction(5, 2)
    with pytest.raises(ValueError):
        (1 + Y) ** -1


def test_laurent_exact_div():
    assert (1 - Y ** 4).exact_div(1 - Y) == 1 + Y + Y ** 2 + Y ** 3
    assert (Y ** 3 + Y ** 5).exact_div(Y) == Y ** 2 + Y ** 4
    with pytest.raises(ValueError):
        (1 + Y ** 2).exact_div(1 + Y)
    with pytest.raises(ZeroDenominator):
        Y.exact_div(LaurentPoly())


def test_laurent_helpers():
    p = 1 + 2 * Y + Y ** 2
    assert p.is_palindromic()
    assert not (1 + 2 * Y).is_palindromic()
    assert p.substitute_inverse() == 1 + 2 * Y ** -1 + Y ** -2
    assert p.substitute_power(3) == 1 + 2 * Y ** 3 + Y ** 6
    assert LaurentPoly.from_json(p.to_json()) == p
    assert p.to_str() == 'Y^2 + 2*Y + 1'


def test_rf_normalize_cancels_common_factor():
    num = bp({(0, 0): 1, (0, 2): -1})
    den = bp({(0, 0): 1, (0, 1): -1})
    f = rf_normalize(num, den)
    assert f.num == bp({(0, 0): 1, (0, 1): 1})
    assert f.den == ONE


def test_rf_normalize_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rf_normalize(ONE, BivariatePoly())


def test_rf_canonical_form_is_unique():
    f = rf_normalize(bp({(0, 0): 2}), bp({(0, 0): 2, (1, 1): -2}))
    g = rf_normalize(bp({(2, 1): 1}), bp({(2, 1): 1, (3, 2): -1}))
    assert f == g


def test_rf_evaluate():
    f = rf_normalize(ONE, BivariatePoly.binomial(1, 1))
    assert rf_evaluate(f, 2, Fraction(1, 4)) == 2
    with pytest.raises(PoleAtPoint):
        rf_evaluate(f, 2, Fraction(1, 2))


def test_rf_expand_geometric():
    f = rf_normalize(ONE, BivariatePoly.binomial(1, 1))
    series = rf_expand(f, 3)
    assert list(series.coefficients) == [LaurentPoly.monomial(k) for k in range(4)]
    assert series.evaluate(2) == [1, 2, 4, 8]


def test_rf_expand_needs_nonzero_constant_term():
    f = rf_normalize(ONE, bp({(0, 1): 1}))
    with pytest.raises(NotExpandable):
        rf_expand(f, 2)


def test_rf_expand_needs_a_monomial_constant_term():
    g = rf_normalize(ONE, bp({(0, 0): 1, (1, 0): 1, (0, 1): 1}))
    with pytest.raises(NotExpandable):
        rf_expand(g, 2)


def test_rf_substitute_q_inverse():
    f = rf_normalize(ONE, BivariatePoly.binomial(1, 1))
    expected = rf_normalize(ONE, bp({(0, 0): 1, (-1, 1): -1}))
    assert rf_substitute_q_inverse(f) == expected
    assert rf_substitute_q_inverse(rf_substitute_q_inverse(f)) == f


def test_rf_invert_is_an_involution():
    f = rf_normalize(bp({(0, 0): 1, (2, 3): 1}), BivariatePoly.binomial(1, 2))
    assert rf_invert(rf_invert(f)) == f


def test_rf_field_operations():
    f = rf_normalize(ONE, BivariatePoly.binomial(0, 1))
    g = rf_normalize(bp({(0, 1): 1}), BivariatePoly.binomial(0, 1))
    assert f - g == RationalFunctionQT(ONE)
    assert (f * (1 - RationalFunctionQT(bp({(0, 1): 1})))) == 1
    with pytest.raises(ZeroDenominator):
        f / RationalFunctionQT(BivariatePoly())


def test_rf_json():
    f = rf_normalize(bp({(0, 0): 1, (1, 1): Fraction(1, 2)}), BivariatePoly.binomial(2, 1))
    assert RationalFunctionQT.from_json(f.to_json()) == f


def test_binomial_quotient_equality_across_factor_lists():
    a = BinomialQuotient(ONE, [(0, 1)])
    b = BinomialQuotient(bp({(0, 0): 1, (0, 1): 1}), [(0, 2)])
    assert a == b
    assert a != BinomialQuotient(ONE, [(0, 2)])


def test_binomial_quotient_reduced():
    num = BivariatePoly.binomial(2, 1).scale(3)
    red = BinomialQuotient(num, [(2, 1), (1, 1)]).reduced()
    assert red.numerator == BivariatePoly.const(3)
    assert red.factors == ((1, 1),)


def test_binomial_quotient_inverted():
    z = BinomialQuotient(ONE, [(1, 1)])
    assert z.inverted() == BinomialQuotient(BivariatePoly.monomial(1, 1, -1), [(1, 1)])


def test_binomial_quotient_substitute_and_expand():
    z = BinomialQuotient(ONE, [(1, 1), (1, 1)])
    series = z.expand(2)
    assert list(series.coefficients) == [LaurentPoly.const(1), 2 * Y, 3 * Y ** 2]
    w = BinomialQuotient(ONE, [(0, 2)]).substitute_t_power(2, 3)
    assert w == BinomialQuotient(ONE, [(3, 2)])
    assert z.evaluate(2, Fraction(1, 4)) == 4


def test_binomial_quotient_to_rational():
    z = BinomialQuotient(bp({(0, 0): 1, (0, 1): 1}), [(0, 2)])
    assert z.to_rational() == rf_normalize(ONE, BivariatePoly.binomial(0, 1))


def test_common_denominator_sum():
    total = common_denominator_sum([(ONE, [(0, 1)]), (bp({(0, 1): 1}), [(0, 1)])])
    assert total == BinomialQuotient(bp({(0, 0): 1, (0, 1): 1}), [(0, 1)])
    mixed = common_denominator_sum([(ONE, [(1, 1)]), (ONE, [(2, 1)])])
    assert sorted(mixed.factors) == [(1, 1), (2, 1)]


def test_binomial_quotient_latex():
    z = BinomialQuotient(ONE, [(1, 1), (2, 2), (2, 2)])
    assert z.latex() == '\\frac{1}{(1 - qt)(1 - q^{2}t^{2})^{2}}'
