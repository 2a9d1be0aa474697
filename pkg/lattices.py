"""Integer lattices: normal forms, enumerations and counting formulas.

Lattices are given by integer row bases. Enumerations run over Hermite
normal forms (upper triangular, positive diagonal, entries above a pivot
reduced modulo it), so every sublattice appears exactly once. Each
closed counting formula here has a brute-force oracle next to it.
"""
import itertools
import logging
import numpy as np
import sympy
from sympy.core.intfunc import igcdex

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from exact import BivariatePoly, common_denominator_sum
from qcombinat import Partition, psi_poly, qbinom, qmultinom
from util import (ContainmentError, NotHorizontalStrip, RangeError,
                  SingularMatrix, check_size, progress)

log = logging.getLogger(__name__)

MAX_ENUMERATION = 2_000_000


def _as_rows(M):
    return tuple(tuple(int(x) for x in row) for row in M)


def _echelon(rows, ncols):
    """Integer row echelon (Hermite) form of the lattice spanned by `rows`."""
    rows = [list(r) for r in rows]
    r0 = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r0, len(rows)) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r0], rows[piv] = rows[piv], rows[r0]
            clean = True
            for i in range(r0 + 1, len(rows)):
                if rows[i][col]:
                    f = rows[i][col] // rows[r0][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r0])]
                    clean = clean and not rows[i][col]
            if clean:
                break
        if r0 < len(rows) and rows[r0][col]:
            if rows[r0][col] < 0:
                rows[r0] = [-a for a in rows[r0]]
            for i in range(r0):
                f = rows[i][col] // rows[r0][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r0])]
            r0 += 1
    return [tuple(r) for r in rows[:r0]]


def hnf(M):
    """Row Hermite normal form of a nonsingular square integer matrix.

    Args:
        M (sequence): Square integer matrix whose rows span the lattice.

    Returns:
        H (tuple): Upper triangular basis of the same row lattice with
            positive diagonal and 0 <= H[i][j] < H[j][j] for i < j.

    Raises:
        SingularMatrix: If det(M) = 0.
    """
    rows = _as_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError('hnf needs a square matrix')
    ech = _echelon(rows, n)
    if len(ech) < n or any(ech[i][i] == 0 for i in range(n)):
        raise SingularMatrix('matrix is singular')
    return tuple(ech)


def lattice_span(rows, ncols):
    """Echelon basis of the lattice generated by arbitrary integer rows."""
    return _echelon(_as_rows(rows), ncols)


def valuation(x, p):
    x = abs(int(x))
    if x == 0:
        raise ValueError('valuation of zero')
    return sympy.multiplicity(p, x)


def determinant(M):
    return int(sympy.Matrix(_as_rows(M)).det())


def smith_type(M, p):
    """p-adic Smith type: valuations of the invariant factors, decreasing.

    Raises:
        SingularMatrix: If det(M) = 0.
    """
    from sympy.matrices.normalforms import invariant_factors
    from sympy.polys.domains import ZZ
    mat = sympy.Matrix(_as_rows(M))
    if mat.det() == 0:
        raise SingularMatrix('matrix is singular')
    factors = invariant_factors(mat, domain=ZZ)
    return Partition.from_multiset(valuation(int(f), p) for f in factors)


def local_smith_type(M, p, det_exp=None):
    """Smith type by elimination over Z/p^(e+1), e = v_p(det M).

    Equal to `smith_type` but fast enough to run inside enumerations.
    """
    rows = [list(r) for r in _as_rows(M)]
    n = len(rows)
    if det_exp is None:
        d = determinant(rows)
        if d == 0:
            raise SingularMatrix('matrix is singular')
        det_exp = valuation(d, p)
    mod = p ** (det_exp + 1)
    a = [[x % mod for x in row] for row in rows]
    vals = []
    live_r, live_c = list(range(n)), list(range(n))
    while live_r:
        best = None
        for i in live_r:
            for j in live_c:
                if a[i][j]:
                    v = valuation(a[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            vals.extend([det_exp + 1] * len(live_r))
            break
        v, pi, pj = best
        unit_inv = pow(a[pi][pj] // p ** v, -1, mod)
        for i in live_r:
            if i != pi and a[i][pj]:
                f = (a[i][pj] // p ** v) * unit_inv % mod
                a[i] = [(x - f * y) % mod for x, y in zip(a[i], a[pi])]
        for j in live_c:
            if j != pj:
                a[pi][j] = 0
        vals.append(v)
        live_r.remove(pi)
        live_c.remove(pj)
    return Partition.from_multiset(vals)


def inverse_transpose(A):
    """Exact g^{-T} of an upper triangular nonsingular integer matrix."""
    n = len(A)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = Fraction(1, A[j][j])
        for i in range(j - 1, -1, -1):
            s = sum(A[i][k] * inv[k][j] for k in range(i + 1, j + 1))
            inv[i][j] = -s / A[i][i]
    return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))


def hermite_delta(record):
    """δ_i = v_p of the i-th HNF diagonal entry."""
    return record.hermite


@dataclass(frozen=True)
class SublatticeRecord:
    basis: tuple
    type: Partition
    hermite: tuple
    index: int

    @property
    def n(self):
        return len(self.basis)

    def projection(self):
        """Basis of the image under projection to the first n-1 coordinates."""
        return tuple(row[:-1] for row in self.basis[:-1])

    def superlattice(self):
        """Rows of basis^{-T}: the dual lattice, containing Z^n with the same index."""
        return inverse_transpose(self.basis)

    def to_json(self):
        return {'basis': [list(r) for r in self.basis],
                'type': list(self.type.parts),
                'delta': list(self.hermite),
                'index': self.index}


def _hnf_with_diagonal(diag):
    """All HNF matrices with the given diagonal."""
    n = len(diag)
    slots = [(i, j) for j in range(n) for i in range(j)]
    ranges = [range(diag[j]) for _, j in slots]
    for values in itertools.product(*ranges):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = diag[i]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
        yield tuple(tuple(r) for r in rows)


def _hnf_count(diag):
    return prod(d ** j for j, d in enumerate(diag))


def ordered_factorizations(index, n, max_entry=None):
    """Diagonals (d_1..d_n) of positive divisors with product `index`."""
    divs = [d for d in sympy.divisors(index)
            if max_entry is None or max_entry % d == 0]
    out = []

    def rec(prefix, rest):
        if len(prefix) == n - 1:
            if max_entry is None or max_entry % rest == 0:
                out.append(tuple(prefix) + (rest,))
            return
        for d in divs:
            if rest % d == 0:
                rec(prefix + [d], rest // d)

    if n == 0:
        return [()] if index == 1 else []
    rec([], index)
    return out


def enumerate_hnf(n, index, max_entry=None, limit=MAX_ENUMERATION):
    """All HNF bases of sublattices of Z^n of the given index.

    Args:
        n (int): Rank.
        index (int): Index of the sublattice.
        max_entry (int): Only diagonals dividing this (the sublattice then
            contains max_entry * Z^n).
        limit (int): Size bound on the enumeration.

    Raises:
        SizeLimit: If the search space exceeds `limit`.
    """
    diags = ordered_factorizations(index, n, max_entry)
    check_size(sum(_hnf_count(d) for d in diags), limit, f'HNF of index {index} in Z^{n}')
    out = []
    for diag in diags:
        out.extend(_hnf_with_diagonal(diag))
    return sorted(out)


@lru_cache(maxsize=64)
def _sublattices(n, p, m, max_exponent, limit):
    max_entry = p ** max_exponent if max_exponent is not None else None
    records = []
    bases = enumerate_hnf(n, p ** m, max_entry, limit)
    for basis in progress(bases, desc=f'sublattices n={n} p^{m}'):
        hermite = tuple(valuation(basis[i][i], p) for i in range(n))
        typ = local_smith_type(basis, p, m)
        # a diagonal dividing p^e does not yet put p^e Z^n inside the lattice
        if max_exponent is not None and typ[0] > max_exponent:
            continue
        records.append(SublatticeRecord(basis=basis, type=typ,
                                        hermite=hermite, index=p ** m))
    log.debug('enumerated %d sublattices of index %d^%d in Z^%d',
              len(records), p, m, n)
    return tuple(records)


def enumerate_sublattices(n, p, m, max_exponent=None, limit=MAX_ENUMERATION):
    """All sublattices of Z^n of index p^m, sorted by HNF basis.

    Args:
        max_exponent (int): Restrict to lattices containing p^max_exponent Z^n,
            i.e. types with largest part at most max_exponent.

    Raises:
        SizeLimit: If the enumeration exceeds `limit`.
    """
    if n < 1 or m < 0:
        raise RangeError('need n >= 1 and m >= 0')
    return list(_sublattices(n, p, m, max_exponent, limit))


def enumerate_superlattices(n, m, limit=MAX_ENUMERATION):
    """HNF matrices g of determinant m; superlattice Λ_g is spanned by the rows of g^{-T}.

    Λ_g runs over all lattices containing Z^n with index m exactly once.
    """
    return enumerate_hnf(n, m, limit=limit)


def _check_containment(lam, mu):
    if not lam.contains(mu):
        raise ContainmentError(f'{mu} is not contained in {lam}')


def birkhoff_count(lam, mu, q):
    """Number of submodules of type μ of a finite module of type λ over a cDVR.

    Raises:
        ContainmentError: If μ is not contained in λ.
    """
    _check_containment(lam, mu)
    q = Fraction(q)
    result = Fraction(1)
    for a in range(1, (lam[0] if len(lam) else 0) + 1):
        la, ma, ma1 = lam.conj(a), mu.conj(a), mu.conj(a + 1)
        result *= q ** (ma * (la - ma)) * qbinom(la - ma1, la - ma)(1 / q)
    return result


def birkhoff_oracle(lam, mu, p, limit=MAX_ENUMERATION):
    """Count subgroups of type μ in ⊕ Z/p^{λ_i} by lattice enumeration.

    Subgroups correspond to lattices L with diag(p^λ) Z^n ⊆ L ⊆ Z^n, the
    subgroup being L / diag(p^λ).
    """
    n = len(lam)
    if n == 0:
        return int(mu.size == 0)
    m = lam.size - mu.size
    if m < 0:
        return 0
    count = 0
    for rec in enumerate_sublattices(n, p, m, lam[0], limit):
        quotient = _relative_basis(rec.basis, [p ** x for x in lam.parts])
        if quotient is not None and local_smith_type(quotient, p, mu.size) == mu:
            count += 1
    return count


def _relative_basis(A, diag):
    """C with diag(d) = C A, or None when diag(d) Z^n is not inside the rows of A."""
    inv_t = inverse_transpose(A)
    n = len(A)
    rows = []
    for i in range(n):
        row = [diag[i] * inv_t[j][i] for j in range(n)]
        if any(x.denominator != 1 for x in row):
            return None
        rows.append(tuple(int(x) for x in row))
    return tuple(rows)


def _alpha_or_zero(n, a, b, q):
    if min(n, a, b) < 0 or a + b > n:
        return Fraction(0)
    return alpha_count(n, a, b, q)


def alpha_count(n, a, b, q):
    """#ℒ_{a,b}: sublattices of o^n of type (2^b, 1^a).

    Raises:
        RangeError: Unless a, b >= 0 and a + b <= n.
    """
    if min(a, b) < 0 or a + b > n:
        raise RangeError(f'need a, b >= 0 and a + b <= n, got {(n, a, b)}')
    q = Fraction(q)
    return q ** ((a + b) * (n - a - b) + b * (n - b)) * qmultinom(n, {b, a + b})(1 / q)


def type_ab(a, b):
    return Partition((2,) * b + (1,) * a)


def psi_omega(n, a, b, ell, q):
    """ψ_{n,ℓ}(ω_{a,b}): sum of q^{-ℓ δ_n(Λ)} over Λ of type (2^b, 1^a)."""
    q = Fraction(q)

    def al(aa, bb):
        return _alpha_or_zero(n - 1, aa, bb, q)

    return (al(a, b)
            + q ** (2 * n - a - 2 * b - 2 * ell) * al(a, b - 1)
            + q ** (n - b - ell) * ((1 - q ** (-a - 1)) * al(a + 1, b - 1)
                                    + q ** (-a) * al(a - 1, b)))


def psi_omega_oracle(n, a, b, ell, p, limit=MAX_ENUMERATION):
    """Enumerate ℒ_{a,b}(Z_p^n) and sum p^{-ℓ δ_n}."""
    target = type_ab(a, b)
    total = Fraction(0)
    for rec in enumerate_sublattices(n, p, a + 2 * b, 2, limit):
        if rec.type == target:
            total += Fraction(p) ** (-ell * rec.hermite[-1])
    return total


def wn_sets(lam, mu):
    """(I, J) of a horizontal-strip pair, J in the shifted [n] convention."""
    cols = range(1, (lam[0] if len(lam) else 0) + 1)
    I = {lam.conj(a) for a in cols if lam.conj(a) == mu.conj(a) + 1 and lam.conj(a) > 0}
    J = {lam.conj(a) + 1 for a in cols if lam.conj(a) == mu.conj(a) > 0}
    return frozenset(I), frozenset(J)


def wn_minimal_pair(n, I, J):
    """Unique minimal (λ, μ) with the given (I, J); requires 1 not in J."""
    if 1 in J:
        raise RangeError('1 is never in the J-set of a pair')
    lam_conj = sorted(list(I) + [j - 1 for j in J], reverse=True)
    mu_conj = sorted([i - 1 for i in I if i > 1] + [j - 1 for j in J], reverse=True)
    return Partition(lam_conj).conjugate(), Partition(mu_conj).conjugate()


def ecard(lam, mu, n, q):
    """#ℰ_{λ,μ}: lattices of type λ in o^n whose projection to o^{n-1} has type μ.

    Raises:
        NotHorizontalStrip: If (λ, μ) is not a horizontal-strip pair.
    """
    if len(lam) > n or len(mu) > n - 1 or not lam.is_horizontal_strip_over(mu):
        raise NotHorizontalStrip(f'({lam}, {mu}) is not a horizontal strip pair for n={n}')
    q = Fraction(q)
    I, J = wn_sets(lam, mu)
    value = psi_poly(n, I, J)(1 / q)
    for a in range(1, (lam[0] if len(lam) else 0) + 1):
        la, ma = lam.conj(a), mu.conj(a)
        if la != ma:
            value *= q ** (la * (n - la))
        else:
            value *= q ** (ma * (n - 1 - ma))
    return value


def ecard_oracle(lam, mu, n, p, limit=MAX_ENUMERATION):
    count = 0
    max_exp = lam[0] if len(lam) else 0
    for rec in enumerate_sublattices(n, p, lam.size, max_exp, limit):
        if rec.type != lam:
            continue
        if n == 1:
            count += mu.size == 0
        elif local_smith_type(rec.projection(), p, sum(rec.hermite[:-1])) == mu:
            count += 1
    return count


def _hs_factor(n, i, kind, xs, y):
    a, b = xs[i - 1]
    if kind == 'I':
        return (i * (n - i) + a + y[0], b + y[1])
    return (j_weight(n, i) + a, b)


def j_weight(n, j):
    return j * (n - 1 - j)


def hs_series_quotient(n, xs, y):
    """Closed form of HS̄_n as a BinomialQuotient in (q, t).

    Args:
        n (int): Rank.
        xs (list): Monomials (a_i, b_i) assigned to x_i = q^{a_i} t^{b_i}.
        y (tuple): Monomial assigned to y.
    """
    summands = []
    for ri in range(n + 1):
        for I in itertools.combinations(range(1, n + 1), ri):
            for rj in range(n):
                for J in itertools.combinations(range(1, n), rj):
                    coeff = BivariatePoly.from_laurent(
                        psi_poly(n, I, [j + 1 for j in J]).substitute_inverse())
                    factors = [_hs_factor(n, i, 'I', xs, y) for i in I]
                    factors += [_hs_factor(n, j, 'J', xs, y) for j in J]
                    for f in factors:
                        coeff = coeff.shift(*f)
                    summands.append((coeff, factors))
    return common_denominator_sum(summands)


def hs_series_formula(n, xs, y):
    """HS̄_n(x, y) at monomial specialisations, as a canonical rational function."""
    return hs_series_quotient(n, xs, y).reduced().to_rational()


def index_series_specialisation(n):
    """x_i = t^i, y = 1: the generating function of sublattices by index."""
    return [(0, i) for i in range(1, n + 1)], (0, 0)


def hs_series_coefficient(n, inc, d, q):
    """Coefficient of x^inc y^d in HS̄_n at residue cardinality q.

    Args:
        n (int): Rank.
        inc (tuple): Increment vector (inc_1, ..., inc_n).
        d (int): Exponent of y (the last Hermite parameter δ_n).
        q (int): Residue field cardinality.
    """
    q = Fraction(q)
    inc = tuple(inc)
    support = [a for a in range(1, n + 1) if inc[a - 1] > 0]
    total = Fraction(0)
    for r in range(len(support) + 1):
        for I in itertools.combinations(support, r):
            # every a in the support not in I must be in J (and J is inside [n-1])
            forced = [a for a in support if a not in I]
            if n in forced:
                continue
            optional = [a for a in I if a < n]
            for s in range(len(optional) + 1):
                for extra in itertools.combinations(optional, s):
                    J = sorted(set(forced) | set(extra))
                    total += _hs_split_weight(n, inc, d, I, J, q)
    return total


def _hs_split_weight(n, inc, d, I, J, q):
    """Sum over splittings inc_a = m_a + m'_a with m_I summing to d."""
    both = [a for a in I if a in J]
    only_i = [a for a in I if a not in J]
    fixed = sum(inc[a - 1] for a in only_i)
    need = d - fixed
    if need < 0:
        return Fraction(0)
    psi = psi_poly(n, I, [j + 1 for j in J])(1 / q)
    if not psi:
        return Fraction(0)
    base = psi
    for a in only_i:
        base *= q ** (a * (n - a) * inc[a - 1])
    for a in J:
        if a not in I:
            base *= q ** (j_weight(n, a) * inc[a - 1])
    total = Fraction(0)
    # m_a in [1, inc_a - 1] for a in both, summing to need
    for ms in itertools.product(*[range(1, inc[a - 1]) for a in both]):
        if sum(ms) != need:
            continue
        w = base
        for a, m in zip(both, ms):
            w *= q ** (a * (n - a) * m + j_weight(n, a) * (inc[a - 1] - m))
        total += w
    return total


def hs_series_oracle(n, p, max_index_exp, limit=MAX_ENUMERATION):
    """Monomial table {(inc(λ), δ_n): count} over sublattices of index p^m, m <= max_index_exp."""
    table = Counter()
    for m in range(max_index_exp + 1):
        for rec in enumerate_sublattices(n, p, m, limit=limit):
            table[(rec.type.inc(n), rec.hermite[-1])] += 1
    return dict(table)


def symplectic_form(x, y):
    """x J y^T for J = [[0, I], [-I, 0]]."""
    n = len(x) // 2
    return sum(x[k] * y[k + n] - x[k + n] * y[k] for k in range(n))


def standard_form(n):
    J = np.zeros((2 * n, 2 * n), dtype=object)
    J[:n, n:] = np.eye(n, dtype=int)
    J[n:, :n] = -np.eye(n, dtype=int)
    return J


def lagrangian_count_oracle(n, p, through_line=False, limit=MAX_ENUMERATION):
    """Count Lagrangian subspaces of F_p^{2n}, optionally those containing <e_1>.

    Subspaces are enumerated in reduced row echelon form.
    """
    dim = 2 * n
    check_size(p ** (n * n) * comb(dim, n), limit, 'Lagrangian search')
    count = 0
    for pivots in itertools.combinations(range(dim), n):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, dim)
                if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * dim for _ in range(n)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            if through_line and (pivots[0] != 0 or any(rows[0][1:])):
                continue
            if all(symplectic_form(rows[i], rows[j]) % p == 0
                   for i in range(n) for j in range(i + 1, n)):
                count += 1
    return count


@dataclass(frozen=True)
class SymplecticCoset:
    """Similitude-κ lattice L ⊂ Z^{2n} given by its HNF row basis.

    L is the row lattice of a matrix g with g J g^T = κ J; the Hecke coset
    is Γ g and its lattice is Λ_g, spanned by the rows of g^{-T}.
    """
    rep: tuple
    similitude: int
    hecke_class: object = None

    @property
    def n(self):
        return len(self.rep) // 2

    def lattice_basis(self):
        return inverse_transpose(self.rep)

    def to_json(self):
        return {'basis': [list(r) for r in self.rep],
                'similitude': self.similitude,
                'class': self.hecke_class}


def hecke_class(n, smith, m):
    """k-class of a similitude-p^m coset from its Smith type, or None."""
    if m == 1:
        return 0
    if m == 2 and set(smith.parts) <= {1, 2}:
        ones = smith.parts.count(1)
        twos = len(smith) - ones
        if ones and ones % 2 == 0 and twos == n - ones // 2:
            return ones // 2
    return None


@lru_cache(maxsize=32)
def _similitude_cosets(n, kappa, limit):
    dim = 2 * n
    diags = ordered_factorizations(kappa ** n, dim, kappa)
    check_size(sum(_hnf_count(d) for d in diags), limit,
               f'symplectic search n={n} kappa={kappa}')
    found = []
    for diag in progress(diags, desc=f'GSp_{dim} kappa={kappa}'):
        found.extend(_search_diagonal(diag, kappa))
    log.debug('found %d similitude-%d lattices in Z^%d', len(found), kappa, dim)
    return tuple(sorted(found))


def _search_diagonal(diag, kappa):
    """Backtrack rows bottom-up, pruning on x J y^T = 0 mod κ."""
    dim = len(diag)
    out = []

    def rec(i, chosen):
        if i < 0:
            out.append(tuple(reversed(chosen)))
            return
        tail = [range(diag[j]) for j in range(i + 1, dim)]
        for vals in itertools.product(*tail):
            row = (0,) * i + (diag[i],) + vals
            if all(symplectic_form(row, other) % kappa == 0 for other in chosen):
                rec(i - 1, chosen + [row])

    rec(dim - 1, [])
    return out


def enumerate_similitude_cosets(n, kappa, limit=MAX_ENUMERATION):
    """All lattices of similitude κ in Z^{2n} as HNF bases.

    A full-rank L with det = κ^n lies in a coset of similitude κ iff the
    form restricted to L is κ times a unimodular one, i.e. A J A^T = 0 mod κ.
    """
    return list(_similitude_cosets(n, kappa, limit))


def enumerate_symplectic_cosets(n, p, m, limit=MAX_ENUMERATION):
    """All similitude-p^m symplectic cosets, classified by Hecke class.

    Raises:
        SizeLimit: If the search space exceeds `limit`.
    """
    if n < 1 or m < 0:
        raise RangeError('need n >= 1 and m >= 0')
    out = []
    for rep in enumerate_similitude_cosets(n, p ** m, limit):
        k = hecke_class(n, local_smith_type(rep, p, n * m), m) if m else None
        out.append(SymplecticCoset(rep=rep, similitude=p ** m, hecke_class=k))
    return out


def _bezout(values):
    """Integers c with sum c_i v_i = gcd(values)."""
    coeffs = [0] * len(values)
    g = 0
    for i, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g, coeffs[i] = abs(v), (1 if v > 0 else -1)
            continue
        s, t, h = (int(x) for x in igcdex(g, v))
        coeffs = [c * s for c in coeffs]
        coeffs[i] = t
        g = h
    return coeffs, g


def symplectic_representative(coset):
    """Matrix g with rows spanning the coset lattice and g J g^T = κ J.

    Symplectic Gram-Schmidt over Z on the unimodular form x J y^T / κ.

    Raises:
        SingularMatrix: If the form on the lattice is not κ-unimodular.
    """
    n, kappa = coset.n, coset.similitude
    dim = 2 * n
    form = lambda x, y: Fraction(symplectic_form(x, y), kappa)
    basis = [tuple(r) for r in coset.rep]
    es, fs = [], []
    while basis:
        e = basis[0]
        pairing = [form(e, v) for v in basis]
        if any(x.denominator != 1 for x in pairing):
            raise SingularMatrix('lattice is not of the stated similitude')
        coeffs, g = _bezout([int(x) for x in pairing])
        if g != 1:
            raise SingularMatrix('form is not unimodular on the lattice')
        f = tuple(sum(c * v[k] for c, v in zip(coeffs, basis)) for k in range(dim))
        es.append(e)
        fs.append(f)
        rest = []
        for w in basis:
            a, b = int(form(w, f)), int(form(w, e))
            rest.append(tuple(w[k] - a * e[k] + b * f[k] for k in range(dim)))
        basis = lattice_span(rest, dim)
    g = tuple(es + fs)
    gram = np.array(g, dtype=object).dot(standard_form(n)).dot(np.array(g, dtype=object).T)
    assert (gram == kappa * standard_form(n)).all()
    return g


def xi_oracle(n, k, p, i, x=None, limit=MAX_ENUMERATION):
    """Count class-k cosets of similitude p^2 whose lattice Λ_g contains x.

    Args:
        x (sequence): Vector in p^{-i} Z^{2n} outside p^{1-i} Z^{2n};
            defaults to p^{-i} e_1.
    """
    if i not in (1, 2):
        raise RangeError('i must be 1 or 2')
    dim = 2 * n
    if x is None:
        x = [Fraction(1, p ** i)] + [Fraction(0)] * (dim - 1)
    x = [Fraction(v) for v in x]
    count = 0
    for coset in enumerate_symplectic_cosets(n, p, 2, limit):
        if coset.hecke_class != k:
            continue
        image = [sum(x[c] * coset.rep[r][c] for c in range(dim)) for r in range(dim)]
        if all(v.denominator == 1 for v in image):
            count += 1
    return count


def xi_formula(n, k, p, i):
    """Closed form of `xi_oracle` in terms of Δ_{n,k}(p)."""
    from hecke_zeta import delta_poly
    p = Fraction(p)
    delta = delta_poly(n, k)(p)
    if i == 1:
        return (p ** (n + k) - 1) / (p ** (2 * n) - 1) * delta
    return (p ** (2 * n) - p ** (n + k)) / (p ** (4 * n) - p ** (2 * n)) * delta
