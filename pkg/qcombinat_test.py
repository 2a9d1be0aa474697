import pytest

from exact import BinomialQuotient, BivariatePoly, LaurentPoly, Y
from qcombinat import Partition, beta, binv_des_table, check_psi_absorption, \
    cover_pairs, igusa_quotient, igusa_subset_form, partitions_of, perm_stats, \
    psi_poly, qbinom, qidentity_check, qmultinom, stat_polynomial, subsets_by_mask, \
    sym_rank_count, sym_rank_oracle, theta_poly, theta_table
from util import RangeError, SizeLimit


def test_partition_normalises_and_conjugates():
    lam = Partition((3, 1, 0, 0))
    assert lam.parts == (3, 1)
    assert lam.conjugate() == Partition((2, 1, 1))
    assert lam.conj(1) == 2
    assert lam.inc(3) == (2, 1, 0)
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_horizontal_strip():
    assert Partition((3, 1)).is_horizontal_strip_over(Partition((1,)))
    assert not Partition((2, 2)).is_horizontal_strip_over(Partition((1,)))


def test_partitions_of():
    assert [lam.parts for lam in partitions_of(4, 2)] == [(4,), (3, 1), (2, 2)]
    assert partitions_of(0, 3) == [Partition()]


def test_qbinom():
    assert qbinom(4, 2) == 1 + Y + 2 * Y ** 2 + Y ** 3 + Y ** 4
    assert qbinom(5, 0) == 1
    assert qbinom(3, 3) == 1
    with pytest.raises(RangeError):
        qbinom(2, 3)


@pytest.mark.parametrize('a', range(1, 7))
def test_qbinom_at_one_is_binomial(a):
    from math import comb
    for b in range(a + 1):
        assert qbinom(a, b)(1) == comb(a, b)


def test_qmultinom():
    assert qmultinom(3, {1, 2}) == (1 + Y + Y ** 2) * (1 + Y)
    assert qmultinom(3, {0, 3}) == 1
    with pytest.raises(RangeError):
        qmultinom(2, {3})


def test_cover_pairs():
    assert cover_pairs([1], [1]) == [(1, 1)]
    assert cover_pairs([1, 3], [2, 4]) == [(1, 2), (3, 4)]
    assert cover_pairs([2], [1]) == []


def test_psi_small_cases():
    assert psi_poly(2, {1}, {2}) == 1 - Y
    assert psi_poly(1, {1}, set()) == LaurentPoly.const(1)
    with pytest.raises(RangeError):
        psi_poly(2, {3}, set())


@pytest.mark.parametrize('n', [1, 2, 3])
def test_psi_absorption(n):
    assert check_psi_absorption(n)


@pytest.mark.parametrize('n', [2, 3])
def test_theta_table_matches_theta_poly(n):
    table = theta_table(n)
    subsets = subsets_by_mask(n)
    for a, I in enumerate(subsets):
        for b, J in enumerate(subsets):
            expected = theta_poly(n, I, J)
            got = LaurentPoly({e: int(c) for e, c in enumerate(table[a, b]) if c})
            assert got == expected


def test_beta():
    assert beta(2, {1}) == 2
    assert beta(2, {2}) == 3
    assert beta(2, {1, 2}) == 5
    assert beta(3, set()) == 0


def test_perm_stats():
    stats = perm_stats(2)
    assert [(s.des, s.inv, s.maj, s.binv) for s in stats] == [(0, 0, 0, 0), (1, 1, 1, 2)]
    assert stats[1].descents == (1,)
    assert len(perm_stats(4)) == 24


def test_perm_stats_size_limit():
    with pytest.raises(SizeLimit):
        perm_stats(5, max_n=4)


def test_binv_des_table():
    assert binv_des_table(2) == {(0, 0): 1, (2, 1): 1}
    assert sum(binv_des_table(4).values()) == 24


def test_inversions_are_mahonian():
    assert stat_polynomial(3, lambda s: s.inv) == (1 + Y) * (1 + Y + Y ** 2)
    assert stat_polynomial(3, lambda s: s.maj) == stat_polynomial(3, lambda s: s.inv)


def test_igusa_quotient():
    got = igusa_quotient(2, [(1, 1), (2, 1)])
    assert got == BinomialQuotient(BivariatePoly({(0, 0): 1, (0, 1): 1}), [(1, 1), (2, 1)])


@pytest.mark.parametrize('n', [1, 2, 3])
def test_igusa_subset_form_agrees(n):
    xs = [(i + 1, i) for i in range(1, n + 1)]
    assert igusa_subset_form(n, xs) == igusa_quotient(n, xs)


def test_sym_rank_count():
    assert sym_rank_count(2, 1, 2) == 3
    assert sym_rank_count(2, 2, 2) == 4
    assert sym_rank_count(2, 0, 2) == 1
    with pytest.raises(RangeError):
        sym_rank_count(2, 3, 2)


@pytest.mark.parametrize('a,p', [(2, 2), (2, 3), (3, 2)])
def test_sym_rank_count_matches_oracle(a, p):
    oracle = sym_rank_oracle(a, p)
    assert oracle == {r: sym_rank_count(a, r, p) for r in range(a + 1)
                      if sym_rank_count(a, r, p)}


def test_sym_rank_oracle_small():
    assert sym_rank_oracle(2, 2) == {0: 1, 1: 3, 2: 4}


@pytest.mark.parametrize('m', range(7))
def test_qidentity(m):
    assert qidentity_check(m)
