"""Partitions, q-binomials, cover-poset polynomials and permutation statistics.

Polynomials in the variable Y are `exact.LaurentPoly`. Wherever a formula
is specialised at Y = q^{-1} the result is embedded in the (q, t) ring of
`exact`.
"""
import itertools
import logging
import numpy as np
import sympy

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix
from exact import BivariatePoly, BinomialQuotient, LaurentPoly, Y, \
    common_denominator_sum
from util import RangeError, check_size, progress

log = logging.getLogger(__name__)

MAX_PERM_N = 13


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of nonnegative integers, zeros trimmed."""
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts):
            raise ValueError(f'negative part in {parts}')
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f'parts of {parts} are not weakly decreasing')
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def from_multiset(cls, values):
        """Partition with the given parts in any order."""
        return cls(tuple(sorted(values, reverse=True)))

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        """0-based part, 0 beyond the length."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self):
        return sum(self.parts)

    def conjugate(self):
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for x in self.parts if x > i)
                               for i in range(self.parts[0])))

    def conj(self, a):
        """λ'_a for a 1-based column a."""
        return sum(1 for x in self.parts if x >= a)

    def contains(self, other):
        return all(self[i] >= other[i] for i in range(max(len(self), len(other))))

    def is_horizontal_strip_over(self, mu):
        """True if self - mu is a horizontal strip (interlacing)."""
        if not self.contains(mu):
            return False
        return all(self[i + 1] <= mu[i] for i in range(len(self)))

    def inc(self, n):
        """Increments (λ_1 - λ_2, ..., λ_{n-1} - λ_n, λ_n)."""
        if len(self) > n:
            raise ValueError(f'{self} has more than {n} parts')
        return tuple(self[i] - self[i + 1] for i in range(n))

    def __str__(self):
        return '(' + ','.join(map(str, self.parts)) + ')'


def conjugate(lam):
    return lam.conjugate()


def partitions_of(size, max_parts):
    """All partitions of `size` with at most `max_parts` parts, in a fixed order."""
    if size == 0:
        return [Partition()]
    out = []
    for p in sympy.utilities.iterables.partitions(size, m=max_parts):
        out.append(Partition.from_multiset(Counter(p).elements()))
    return sorted(out, key=lambda lam: lam.parts, reverse=True)


@lru_cache(maxsize=None)
def qbinom(a, b):
    """Y-binomial coefficient binom(a, b)_Y.

    Raises:
        RangeError: Unless 0 <= b <= a.
    """
    if not 0 <= b <= a:
        raise RangeError(f'binom({a}, {b}) needs 0 <= b <= a')
    b = min(b, a - b)
    # Pascal: binom(a, b) = binom(a-1, b-1) + Y^b binom(a-1, b)
    row = [LaurentPoly.const(1)]
    for i in range(1, a + 1):
        new = []
        for j in range(min(i, b) + 1):
            left = row[j - 1] if j >= 1 else LaurentPoly()
            right = row[j].shift(j) if j < len(row) and j <= i - 1 else LaurentPoly()
            new.append(left + right)
        row = new
    return row[b]


def qmultinom(n, S):
    """Y-multinomial binom(n, S)_Y = binom(n, s_k) binom(s_k, s_{k-1}) ...

    Zeros in S contribute the factor 1.

    Raises:
        RangeError: If an element of S lies outside [0, n].
    """
    elems = sorted(set(S))
    if any(s < 0 or s > n for s in elems):
        raise RangeError(f'{sorted(S)} is not a subset of [0, {n}]')
    elems = [s for s in elems if s]
    result = LaurentPoly.const(1)
    upper = n
    for s in reversed(elems):
        result = result * qbinom(upper, s)
        upper = s
    return result


def cover_pairs(I, J):
    """Pairs (i, j) with (j, 1) covering (i, 0) in (I x {0}) u (J x {1})."""
    poset = sorted([(i, 0) for i in set(I)] + [(j, 1) for j in set(J)])
    return [(x[0], y[0]) for x, y in zip(poset, poset[1:])
            if x[1] == 0 and y[1] == 1]


@lru_cache(maxsize=None)
def _psi(n, I, J):
    shifted = {i - 1 for i in I} | {j - 1 for j in J}
    result = qmultinom(n - 1, shifted - {0})
    for i, j in cover_pairs(I, [j - 1 for j in J]):
        result = result * (1 - Y ** (j - i + 1))
    return result


def psi_poly(n, I, J):
    """Ψ_{n,I,J}(Y): multinomial of (I-1) u (J-1) times cover factors (1 - Y^{j-i+1})."""
    I, J = tuple(sorted(set(I))), tuple(sorted(set(J)))
    _check_subset(n, I)
    _check_subset(n, J)
    return _psi(n, I, J)


def _check_subset(n, S):
    if any(s < 1 or s > n for s in S):
        raise RangeError(f'{list(S)} is not a subset of [1, {n}]')


def subsets_by_mask(n):
    """All subsets of [n] indexed by bitmask (bit i-1 set iff i in the subset)."""
    return [tuple(i + 1 for i in range(n) if mask >> i & 1)
            for mask in range(1 << n)]


def theta_poly(n, I, J):
    """Θ_{n,I,J} = sum over A in I, B in J of (-1)^{|I-A|+|J-B|} Ψ_{n,A,B}."""
    I, J = sorted(set(I)), sorted(set(J))
    _check_subset(n, I)
    _check_subset(n, J)
    total = LaurentPoly()
    for ra in range(len(I) + 1):
        for A in itertools.combinations(I, ra):
            for rb in range(len(J) + 1):
                for B in itertools.combinations(J, rb):
                    sign = (-1) ** (len(I) - ra + len(J) - rb)
                    total = total + sign * psi_poly(n, A, B)
    return total


def check_psi_absorption(n):
    """Ψ_{n,I,(J+1) u {1}} == Ψ_{n,I,J+1} for all I in [n], J in [n-1]."""
    for I in subsets_by_mask(n):
        for J in subsets_by_mask(n - 1):
            shifted = {j + 1 for j in J}
            if psi_poly(n, I, shifted | {1}) != psi_poly(n, I, shifted):
                log.debug('absorption fails at n=%d I=%s J=%s', n, I, J)
                return False
    return True


def psi_table(n):
    """Ψ coefficients as an int64 array of shape (2^n, 2^n, D), Y-degree last."""
    subsets = subsets_by_mask(n)
    polys = {}
    degree = 0
    for a, A in enumerate(subsets):
        for b, B in enumerate(subsets):
            p = _psi(n, A, B)
            polys[a, b] = p
            if p:
                degree = max(degree, p.degree)
    arr = np.zeros((len(subsets), len(subsets), degree + 1), dtype=np.int64)
    for (a, b), p in polys.items():
        for e, c in p.terms.items():
            arr[a, b, e] = int(c)
    log.debug('psi table n=%d: shape %s', n, arr.shape)
    return arr


def theta_table(n):
    """All Θ_{n,I,J} at once by a subset Möbius transform of `psi_table`."""
    arr = psi_table(n)
    for axis in (0, 1):
        for bit in range(n):
            step = 1 << bit
            idx = np.arange(arr.shape[axis])
            upper = idx[(idx & step) != 0]
            if axis == 0:
                arr[upper] -= arr[upper - step]
            else:
                arr[:, upper] -= arr[:, upper - step]
    return arr


def beta(n, I):
    """β(I) = sum over i in I of C(i+1, 2) + i(n-i)."""
    _check_subset(n, I)
    return sum(comb(i + 1, 2) + i * (n - i) for i in set(I))


@dataclass(frozen=True)
class PermStat:
    permutation: tuple
    des: int
    inv: int
    maj: int
    binv: int

    @property
    def descents(self):
        w = self.permutation
        return tuple(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def _stat(w):
    n = len(w)
    descents = [i + 1 for i in range(n - 1) if w[i] > w[i + 1]]
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    return PermStat(permutation=tuple(w), des=len(descents), inv=inv,
                    maj=sum(descents),
                    binv=inv + sum(comb(i + 1, 2) for i in descents))


def iter_perm_stats(n, max_n=MAX_PERM_N):
    """Yield PermStat for every permutation of [n] in lexicographic order.

    Raises:
        SizeLimit: If n > max_n.
    """
    if n < 1:
        raise RangeError('n must be positive')
    check_size(n, max_n, 'permutation degree')
    for w in itertools.permutations(range(1, n + 1)):
        yield _stat(w)


def perm_stats(n, max_n=MAX_PERM_N):
    """All n! permutations with des, inv, maj and binv, lexicographically."""
    return list(iter_perm_stats(n, max_n))


def stat_polynomial(n, stat):
    """Σ_w Y^{stat(w)} for a function `stat` of PermStat."""
    counts = Counter(stat(s) for s in progress(iter_perm_stats(n), desc=f'S_{n}'))
    return LaurentPoly(dict(counts))


def binv_des_table(n):
    """Joint distribution {(binv, des): count} over S_n."""
    return dict(sorted(Counter((s.binv, s.des) for s in iter_perm_stats(n)).items()))


def igusa_numerator(n, xs, y_exp=-1):
    """Σ_w Y^{inv(w)} Π_{i in Des(w)} X_i with Y = q^y_exp and X_i = q^a t^b.

    Args:
        n (int): Degree.
        xs (list): n monomials (a_i, b_i) standing for q^{a_i} t^{b_i}.
        y_exp (int): Exponent with Y = q^{y_exp}.
    """
    if len(xs) != n:
        raise ValueError(f'expected {n} monomials, got {len(xs)}')
    terms = Counter()
    for s in iter_perm_stats(n):
        qe, te = y_exp * s.inv, 0
        for i in s.descents:
            qe += xs[i - 1][0]
            te += xs[i - 1][1]
        terms[(qe, te)] += 1
    return BivariatePoly(dict(terms))


def igusa_quotient(n, xs, y_exp=-1):
    """Ig_n(Y; X) as a BinomialQuotient over Π (1 - X_i)."""
    return BinomialQuotient(igusa_numerator(n, xs, y_exp), xs)


def igusa(n, xs, y_exp=-1):
    """Igusa function Ig_n(Y; X_1..X_n) in canonical form, Y = q^y_exp."""
    return igusa_quotient(n, xs, y_exp).to_rational()


def igusa_subset_form(n, xs, y_exp=-1):
    """Σ_I binom(n, I)_Y Π_{i in I} X_i / (1 - X_i), unreduced."""
    summands = []
    for S in subsets_by_mask(n):
        coeff = qmultinom(n, S).substitute_power(y_exp)
        num = BivariatePoly.from_laurent(coeff)
        for i in S:
            num = num.shift(*xs[i - 1])
        summands.append((num, [xs[i - 1] for i in S]))
    return common_denominator_sum(summands)


def sym_rank_count(a, r, q):
    """Number of symmetric a x a matrices of rank r over a field with q elements.

    Raises:
        RangeError: Unless 0 <= r <= a.
    """
    if not 0 <= r <= a:
        raise RangeError(f'rank {r} outside [0, {a}]')
    q = Fraction(q)
    k = a - r
    value = q ** (comb(a + 1, 2) - comb(k + 1, 2)) * qbinom(a, k)(1 / q)
    for d in range(1, (a - k + 1) // 2 + 1):
        value *= 1 - q ** (-2 * d + 1)
    return value


def sym_rank_oracle(a, p):
    """Brute-force rank distribution of symmetric a x a matrices over F_p."""
    check_size(p ** comb(a + 1, 2), 10 ** 6, 'symmetric matrices')
    field = GF(p)
    slots = [(i, j) for i in range(a) for j in range(i, a)]
    counts = Counter()
    for values in itertools.product(range(p), repeat=len(slots)):
        rows = [[0] * a for _ in range(a)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = rows[j][i] = v
        if a == 0:
            counts[0] += 1
            continue
        mat = DomainMatrix([[field(x) for x in row] for row in rows], (a, a), field)
        counts[mat.rank()] += 1
    return dict(sorted(counts.items()))


def qidentity_check(m):
    """Π_{i=1}^m (1 + X^i Y) == Σ_j Y^j X^{C(j+1,2)} binom(m, j)_X, with q := X, t := Y."""
    lhs = BivariatePoly.const(1)
    for i in range(1, m + 1):
        lhs = lhs * (BivariatePoly.const(1) + BivariatePoly.monomial(i, 1))
    rhs = BivariatePoly()
    for j in range(m + 1):
        rhs = rhs + BivariatePoly.from_laurent(qbinom(m, j)).shift(comb(j + 1, 2), j)
    return lhs == rhs
