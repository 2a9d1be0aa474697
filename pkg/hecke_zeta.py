"""Eigenvalue polynomials and local Ehrhart-Hecke zeta functions.

Φ^C and Φ^A give the eigenvalues of the Hecke generators on the ℓ-th
Ehrhart coefficient. The local zeta functions are assembled in factored
form (`exact.BinomialQuotient`), so that the identity checks below stay
exact and fast up to n = 8.
"""
import logging
import numpy as np

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from ehrhart import avg_coeff
from exact import BinomialQuotient, BivariatePoly, LaurentPoly, Y, \
    common_denominator_sum
from lattices import enumerate_superlattices, psi_omega, psi_omega_oracle
from qcombinat import beta, igusa_quotient, psi_poly, qbinom, \
    subsets_by_mask, sym_rank_count, sym_rank_oracle, theta_table
from util import RangeError, check_size, progress

log = logging.getLogger(__name__)

MAX_ZETA_N = 8


@dataclass(frozen=True)
class EigenvaluePoly:
    """Φ^A_{n,k,ℓ} or Φ^C_{n,k,ℓ} together with its parameters."""
    kind: str
    n: int
    k: int
    ell: int
    poly: LaurentPoly

    def __call__(self, q):
        return self.poly(q)

    def to_json(self):
        return {'type': self.kind, 'n': self.n, 'k': self.k, 'ell': self.ell,
                'poly': self.poly.to_json()}

    def latex(self):
        return self.poly.latex()


@dataclass(frozen=True)
class SatakeParams:
    """The ℓ-th spherical Ehrhart parameters (q^ℓ, q, ..., q^{n-1}, q^{n-ℓ})."""
    n: int
    ell: int

    @property
    def exponents(self):
        return (self.ell,) + tuple(range(1, self.n)) + (self.n - self.ell,)

    def evaluate(self, q):
        q = Fraction(q)
        return tuple(q ** e for e in self.exponents)


@dataclass(frozen=True)
class LocalZeta:
    """Local zeta function of type A or C, kept as a reduced BinomialQuotient.

    Attributes:
        kind (str): 'A' or 'C'.
        n (int): Rank.
        ell (int): Index of the Ehrhart coefficient.
        quotient (BinomialQuotient): numerator / Π (1 - q^a t^b).
    """
    kind: str
    n: int
    ell: int
    quotient: BinomialQuotient

    @property
    def value(self):
        """Canonical RationalFunctionQT."""
        return self.quotient.to_rational()

    @property
    def step(self):
        """t-exponents are multiples of `step` (n for type C, 1 for type A)."""
        return self.n if self.kind == 'C' else 1

    def expand(self, order):
        """t-expansion to t^order."""
        return self.quotient.expand(order)

    def series_at(self, q0, order):
        """Coefficients of t^{step * m}, m = 0..order, at q = q0."""
        series = self.expand(self.step * order)
        return [series[self.step * m](q0) for m in range(order + 1)]

    def to_json(self):
        return {'type': self.kind, 'n': self.n, 'ell': self.ell,
                'value': self.value.to_json(),
                'numerator': self.quotient.numerator.to_json(),
                'factors': [[a, b] for a, b in self.quotient.factors]}

    def latex(self):
        return self.quotient.latex()


def delta_poly(n, k):
    """Δ_{n,k}(Y) = Π_{i=1}^{n-k} (1 + Y^{k+i}), times Y^{C(n-k+1,2)} binom(n,k)_Y if k > 0.

    Raises:
        RangeError: Unless 0 <= k <= n.
    """
    if not 0 <= k <= n:
        raise RangeError(f'delta_poly needs 0 <= k <= n, got {(n, k)}')
    result = LaurentPoly.const(1)
    for i in range(1, n - k + 1):
        result = result * (1 + Y ** (k + i))
    if k > 0:
        result = result * Y ** comb(n - k + 1, 2) * qbinom(n, k)
    return result


def phi_C(n, k, ell):
    """Φ^C_{n,k,ℓ}(Y).

    For k >= 1 the closed form is a fraction over Y^{2n} - 1; the
    division is carried out exactly and fails loudly if it leaves a
    remainder.

    Raises:
        RangeError: Unless 0 <= k <= n.
    """
    if n < 1 or not 0 <= k <= n:
        raise RangeError(f'phi_C needs n >= 1 and 0 <= k <= n, got {(n, k)}')
    if k == 0:
        result = Y ** ell + Y ** n
        for i in range(1, n):
            result = result * (1 + Y ** i)
        return result
    bracket = (Y ** (2 * ell) - Y ** (2 * ell - n + k) + Y ** (ell + n + k)
               - 2 * Y ** ell + Y ** (ell - n + k) + Y ** (2 * n) - Y ** (n + k))
    return (delta_poly(n, k) * bracket).exact_div(Y ** (2 * n) - 1)


def phi_A(n, k, ell):
    """Φ^A_{n,k,ℓ}(Y) = Y^k binom(n-1,k)_Y + Y^ℓ binom(n-1,k-1)_Y.

    Raises:
        RangeError: Unless 1 <= k <= n.
    """
    if not 1 <= k <= n:
        raise RangeError(f'phi_A needs 1 <= k <= n, got {(n, k)}')
    first = Y ** k * qbinom(n - 1, k) if k <= n - 1 else LaurentPoly()
    return first + Y ** ell * qbinom(n - 1, k - 1)


def eigenvalue_poly(kind, n, k, ell):
    if kind == 'C':
        return EigenvaluePoly('C', n, k, ell, phi_C(n, k, ell))
    if kind == 'A':
        return EigenvaluePoly('A', n, k, ell, phi_A(n, k, ell))
    raise ValueError(f'Unknown type: {kind}')


def check_phi_ratio(kind, n, k, ell):
    """Φ^C_{n,k,2n-ℓ} == Y^{n-ℓ} Φ^C_{n,k,ℓ} (k = 0), Y^{2(n-ℓ)} Φ^C_{n,k,ℓ} (k >= 1);
    Φ^A_{n,k,ℓ} == Y^{k+ℓ-n} Φ^A_{n,n-k,n-ℓ} for 1 <= k < n.
    """
    if kind == 'C':
        shift = n - ell if k == 0 else 2 * (n - ell)
        return phi_C(n, k, 2 * n - ell) == phi_C(n, k, ell).shift(shift)
    if kind == 'A':
        return phi_A(n, k, ell) == phi_A(n, n - k, n - ell).shift(k + ell - n)
    raise ValueError(f'Unknown type: {kind}')


def check_phi_delta(n, k):
    """Φ^C_{n,k,0} == Δ_{n,k}."""
    return phi_C(n, k, 0) == delta_poly(n, k)


def satake_image_eval(n, k, ell, p, oracle=False):
    """ψ_{n,ℓ,p}(Ω(T_{n,k,p})) evaluated from the generator images.

    Args:
        n (int): Rank.
        k (int): Generator index in [0, n].
        ell (int): Ehrhart index.
        p (int): Prime (or prime power) q.
        oracle (bool): Take ψ(ω_{a,b}) and #Sym_{a,r}(F_p) from lattice and
            matrix enumeration instead of their closed forms.

    Returns:
        value (Fraction): Must equal Φ^C_{n,k,ℓ}(p).
    """
    if not 0 <= k <= n:
        raise RangeError(f'k must lie in [0, {n}]')
    params = SatakeParams(n, ell).evaluate(p)
    if k == 0:
        value = params[0]
        for x in params[1:]:
            value *= 1 + x
        return value
    q = Fraction(p)
    total = Fraction(0)
    for a in range(k, n + 1):
        if oracle:
            sym = Fraction(sym_rank_oracle(a, p).get(a - k, 0))
        else:
            sym = sym_rank_count(a, a - k, q)
        for b in range(n - a + 1):
            if oracle:
                omega = psi_omega_oracle(n, a, b, ell, p)
            else:
                omega = psi_omega(n, a, b, ell, q)
            total += q ** (b * (a + b + 1)) * omega * sym
    return params[0] ** 2 * total


def check_difference_identity(n, k, ell, p, oracle=False):
    """ψ_ℓ(Ω T_k) - ψ_{ℓ-1}(Ω T_k) == Φ_{n,k,ℓ}(p) - Φ_{n,k,ℓ-1}(p)."""
    lhs = (satake_image_eval(n, k, ell, p, oracle)
           - satake_image_eval(n, k, ell - 1, p, oracle))
    rhs = phi_C(n, k, ell)(p) - phi_C(n, k, ell - 1)(p)
    return lhs == rhs


def _zeta_factors(n, ell):
    xs = [(beta(n, {i}), n) for i in range(1, n + 1)]
    ys = [(beta(n, {j}) - n + ell, n) for j in range(1, n + 1)]
    return xs, ys


def _check_zeta_n(n, max_n):
    if n < 1:
        raise RangeError('zeta functions need n >= 1')
    check_size(n, max_n, 'rank of the zeta function')


def zeta_C_commden(n, ell, max_n=MAX_ZETA_N):
    """Z_{n,ℓ} over the common denominator Π_i (1 - X_i) Π_j (1 - Y_j), unreduced.

    The numerator is Σ_{S,T} Θ_{n,S,T}(q^{-1}) X^S Y^T with X_i = q^{β(i)} t^n
    and Y_j = q^{β(j)-n+ℓ} t^n. `.to_rational()` gives the canonical
    rational function.

    Raises:
        SizeLimit: If n exceeds `max_n`.
    """
    _check_zeta_n(n, max_n)
    xs, ys = _zeta_factors(n, ell)
    table = theta_table(n)
    size = 1 << n
    betas = np.array([beta(n, S) for S in subsets_by_mask(n)], dtype=np.int64)
    pops = np.array([len(S) for S in subsets_by_mask(n)], dtype=np.int64)
    a, b, e = np.nonzero(table)
    vals = table[a, b, e]
    # Θ is evaluated at Y = q^{-1}
    qe = betas[a] + betas[b] + pops[b] * (ell - n) - e
    te = n * (pops[a] + pops[b])
    q_lo = int(qe.min()) if len(qe) else 0
    grid = np.zeros((int(qe.max()) - q_lo + 1 if len(qe) else 1, 2 * n + 1),
                    dtype=np.int64)
    np.add.at(grid, (qe - q_lo, te // n), vals)
    terms = {(int(i) + q_lo, n * int(j)): int(grid[i, j])
             for i, j in zip(*np.nonzero(grid))}
    log.debug('commden numerator n=%d ell=%d: %d terms from %d table entries '
              'over %d subset pairs', n, ell, len(terms), len(vals), size * size)
    return BinomialQuotient(BivariatePoly(terms), xs + ys)


def _zeta_C_direct(n, ell):
    xs, ys = _zeta_factors(n, ell)
    summands = []
    subsets = subsets_by_mask(n)
    for I in progress(subsets, desc=f'zeta_C n={n}'):
        for J in subsets:
            num = BivariatePoly.from_laurent(psi_poly(n, I, J).substitute_inverse())
            factors = [xs[i - 1] for i in I] + [ys[j - 1] for j in J]
            for f in factors:
                num = num.shift(*f)
            summands.append((num, factors))
    return common_denominator_sum(summands)


def zeta_C(n, ell, method='theta', max_n=MAX_ZETA_N):
    """Local Ehrhart-Hecke zeta function Z^C_{n,ℓ}(s), t = q^{-s}.

    Args:
        n (int): Rank, 1 <= n <= max_n.
        ell (int): Any integer.
        method (str): 'theta' sums Θ over the common denominator;
            'direct' adds the 4^n Ψ-summands one by one (use for n <= 4).
        max_n (int): Size bound.

    Returns:
        zeta (LocalZeta): Type C zeta function with cancelled factors.
    """
    _check_zeta_n(n, max_n)
    if method == 'theta':
        quotient = zeta_C_commden(n, ell, max_n)
    elif method == 'direct':
        quotient = _zeta_C_direct(n, ell)
    else:
        raise ValueError(f'Unknown method: {method}')
    return LocalZeta('C', n, ell, quotient.reduced())


def zeta_A(n, ell):
    """Z^A_{n,ℓ} = 1 / ((1 - q^ℓ t) Π_{k=1}^{n-1} (1 - q^k t))."""
    if n < 1:
        raise RangeError('zeta functions need n >= 1')
    factors = [(ell, 1)] + [(k, 1) for k in range(1, n)]
    return LocalZeta('A', n, ell, BinomialQuotient(BivariatePoly.const(1), factors))


def local_zeta(kind, n, ell, **kwargs):
    if kind == 'C':
        return zeta_C(n, ell, **kwargs)
    if kind == 'A':
        return zeta_A(n, ell)
    raise ValueError(f'Unknown type: {kind}')


def check_functional_eq(n, ell, max_n=MAX_ZETA_N):
    """Z(1/q, 1/t) == (-1)^{n+1} q^{n^2+ℓ} t^{2n} Z(q, t)."""
    quotient = zeta_C(n, ell, max_n=max_n).quotient
    expected = quotient.shift(n * n + ell, 2 * n, (-1) ** (n + 1))
    return quotient.inverted() == expected


def check_reflection(n, ell, max_n=MAX_ZETA_N):
    """Z_{n,2n-ℓ}(s) == Z_{n,ℓ}(s - (n-ℓ)/n), i.e. t^n -> q^{n-ℓ} t^n."""
    left = zeta_C(n, 2 * n - ell, max_n=max_n).quotient
    right = zeta_C(n, ell, max_n=max_n).quotient.substitute_t_power(n, n - ell)
    return left == right


def _igusa_side(n, lower):
    top = comb(n + 1, 2)
    xs = [(top - lower(i), n) for i in range(1, n + 1)]
    return igusa_quotient(n, xs, -1).divide_by(top, n)


def igusa_form(n, ell):
    """Igusa-function expression of Z_{n,ℓ} for ℓ in {0, n}."""
    if ell == 0:
        return _igusa_side(n, lambda i: comb(i + 1, 2))
    if ell == n:
        return _igusa_side(n, lambda i: comb(i, 2))
    raise RangeError(f'no Igusa form for ell={ell}')


def check_igusa_l0(n, max_n=MAX_ZETA_N):
    """Z_{n,0} == Ig_n(q^{-1}; (q^{C(n+1,2)-C(i+1,2)} t^n)_i) / (1 - q^{C(n+1,2)} t^n)."""
    return igusa_form(n, 0) == zeta_C(n, 0, max_n=max_n).quotient


def check_igusa_ln(n, max_n=MAX_ZETA_N):
    """Z_{n,n} == Ig_n(q^{-1}; (q^{C(n+1,2)-C(i,2)} t^n)_i) / (1 - q^{C(n+1,2)} t^n).

    Evidence for an open statement; the verdict is only reported.
    """
    verdict = igusa_form(n, n) == zeta_C(n, n, max_n=max_n).quotient
    log.info('Igusa form of Z_{%d,%d}: %s', n, n, 'holds' if verdict else 'fails')
    return verdict


def zeta_series_formula(kind, n, ell, p, order):
    """Coefficients of t^{step * m}, m <= order, of the closed form at q = p."""
    return local_zeta(kind, n, ell).series_at(p, order)


def zeta_series_oracle(kind, n, ell, p, P, order):
    """Coefficient m is the average of ℰ_ℓ(Λ; P)/ℰ_ℓ(P) over co-index p^m lattices.

    Type C averages over similitude-p^m symplectic cosets (P of
    dimension 2n); type A over superlattices of index p^m (P of dimension n).

    Raises:
        SizeLimit: If an enumeration exceeds its bound.
        ZeroCoefficient: If ℰ_ℓ(P) = 0.
    """
    expected_dim = 2 * n if kind == 'C' else n
    if P.dim_ambient != expected_dim:
        raise ValueError(f'type {kind} with n={n} needs a polytope in dimension {expected_dim}')
    series = [avg_coeff(P, ell, p ** m, kind) for m in range(order + 1)]
    log.debug('series oracle %s n=%d ell=%d p=%d: %s', kind, n, ell, p, series)
    return series


def tamagawa_check(n, p, order, ell=0, P=None):
    """(Σ_m C_m X^m)(Σ_k (-1)^k p^{C(k,2)} Φ^A_{n,k,ℓ}(p) X^k) == 1 mod X^{order+1}.

    C_m is the number of superlattices of index p^m when ℓ = 0 and P is
    not given, and the average `avg_coeff(P, ℓ, p^m, 'A')` otherwise.
    """
    if P is None:
        if ell != 0:
            raise ValueError('a polytope is needed for ell != 0')
        counts = [Fraction(len(enumerate_superlattices(n, p ** m)))
                  for m in range(order + 1)]
    else:
        counts = [avg_coeff(P, ell, p ** m, 'A') for m in range(order + 1)]
    recip = [Fraction(1)] + [(-1) ** k * Fraction(p) ** comb(k, 2) * phi_A(n, k, ell)(p)
                             for k in range(1, n + 1)]
    for m in range(order + 1):
        acc = sum((counts[m - k] * recip[k] for k in range(min(m, n) + 1)), Fraction(0))
        if acc != (1 if m == 0 else 0):
            log.debug('Tamagawa product fails at X^%d: %s', m, acc)
            return False
    return True
