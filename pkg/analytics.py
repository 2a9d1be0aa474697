"""Global Ehrhart-Hecke Dirichlet series.

Coefficients come from Euler products of the local zeta functions.
Abscissas and pole orders are exact; asymptotic constants are reported as
rational intervals with a certified error.
"""
import logging
import numpy as np
import sympy

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, floor, gcd, log10
from mpmath import mp
from ehrhart import avg_coeff
from exact import LaurentPoly
from hecke_zeta import check_igusa_ln, local_zeta
from qcombinat import stat_polynomial
from util import ComputationError, NotImplementedForParameters, RangeError, \
    ZeroDenominator, check_size, frac_to_str, progress

log = logging.getLogger(__name__)

MAX_GLOBAL_M = 10 ** 6
MAX_GAMMA_N = 8


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lo', Fraction(self.lo))
        object.__setattr__(self, 'hi', Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f'empty interval [{self.lo}, {self.hi}]')

    @classmethod
    def point(cls, x):
        return cls(x, x)

    @classmethod
    def around(cls, x, radius):
        return cls(x - radius, x + radius)

    def _coerce(self, other):
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        ends = [self.lo * other.lo, self.lo * other.hi,
                self.hi * other.lo, self.hi * other.hi]
        return Interval(min(ends), max(ends))

    __rmul__ = __mul__

    def reciprocal(self):
        if self.lo <= 0 <= self.hi:
            raise ZeroDenominator(f'interval {self} contains 0')
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __pow__(self, k):
        if k < 0:
            return (self ** -k).reciprocal()
        result = Interval.point(1)
        for _ in range(k):
            result = result * self
        return result

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        return self.lo <= x <= self.hi

    def rounded(self, digits):
        """Round outward to multiples of 10^-digits."""
        scale = 10 ** digits
        return Interval(Fraction(floor(self.lo * scale), scale),
                        Fraction(-floor(-self.hi * scale), scale))

    def to_json(self):
        return {'lo': frac_to_str(self.lo), 'hi': frac_to_str(self.hi)}

    def __str__(self):
        return f'[{float(self.lo):.12g}, {float(self.hi):.12g}]'


def _digits(precision):
    return max(0, -floor(log10(float(precision)))) + 4


@lru_cache(maxsize=None)
def _bernoulli(k):
    b = sympy.bernoulli(k)
    return Fraction(int(b.p), int(b.q))


@lru_cache(maxsize=None)
def zeta_value(s, precision=Fraction(1, 10 ** 20)):
    """ζ(s) for an integer s >= 2 by Euler-Maclaurin summation.

    The remainder after the last correction term is bounded by the first
    omitted term, since x^{-s} is completely monotone.

    Returns:
        value (Interval): Contains ζ(s), width at most `precision`.
    """
    if s < 2:
        raise RangeError(f'zeta_value needs an integer s >= 2, got {s}')
    precision = Fraction(precision)
    N = 10
    value = sum((Fraction(1, k ** s) for k in range(1, N)), Fraction(0))
    value += Fraction(1, (s - 1) * N ** (s - 1)) + Fraction(1, 2 * N ** s)
    rising = Fraction(s)
    j = 1
    while True:
        term = _bernoulli(2 * j) / factorial(2 * j) * rising / Fraction(N) ** (s + 2 * j - 1)
        if abs(term) * 2 < precision:
            radius = abs(term)
            break
        value += term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        j += 1
        if 2 * j > 6 * N:
            raise ComputationError(f'zeta({s}) did not reach precision {precision}')
    return Interval.around(value, radius).rounded(_digits(precision))


def gamma_euler_factor(n, kind, max_n=MAX_GAMMA_N):
    """Euler factor of γ_{n,0} (kind 0) or γ_{n,n} (kind 'n') as a polynomial in Y = p^{-1}.

    kind 0 sums Y^{binv+des} over S_n, kind 'n' sums Y^{binv+des-maj}.

    Raises:
        SizeLimit: If n > max_n.
    """
    check_size(n, max_n, 'gamma Euler factor degree')
    if kind in (0, '0'):
        return stat_polynomial(n, lambda s: s.binv + s.des)
    if kind in ('n', n):
        return stat_polynomial(n, lambda s: s.binv + s.des - s.maj)
    raise ValueError(f'Unknown gamma kind: {kind}')


def _binomial_power_series(d, e, D):
    """(1 - Y^d)^e truncated at Y^D, for any integer e."""
    coeffs = [Fraction(0)] * (D + 1)
    c = Fraction(1)
    for k in range(D // d + 1):
        coeffs[d * k] = c
        # generalised binomial: c_{k+1} = -c_k (e - k) / (k + 1)
        c = -c * (e - k) / (k + 1)
    return coeffs


def _truncated_mul(a, b, D):
    out = [Fraction(0)] * (D + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(D + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def cyclotomic_exponents(F, D):
    """Integers e_d with F = Π_{d<=D} (1 - Y^d)^{-e_d} · (1 + O(Y^{D+1}))."""
    if F.coeff(0) != 1 or not F.is_polynomial():
        raise ValueError('the factor must be a polynomial with constant term 1')
    series = [F.coeff(e) for e in range(D + 1)]
    exps = {}
    for d in range(1, D + 1):
        c = series[d]
        if c:
            exps[d] = int(c)
            series = _truncated_mul(series, _binomial_power_series(d, int(c), D), D)
    return exps


@dataclass(frozen=True)
class EulerSplit:
    """F = Π_d (1 - Y^d)^{-e_d} · num/den with num/den = 1 + O(Y^{D+1})."""
    exponents: dict
    num: LaurentPoly
    den: LaurentPoly
    D: int

    def tail_constant(self):
        """Sum of |coefficients| of num - den."""
        diff = self.num - self.den
        if diff and diff.valuation <= self.D:
            raise ComputationError('Euler factor split is not 1 + O(Y^{D+1})')
        return sum((abs(c) for c in diff.terms.values()), Fraction(0))


def split_euler_factor(F, extra=12):
    D = F.degree + extra
    exps = cyclotomic_exponents(F, D)
    if 1 in exps:
        raise ComputationError('Euler factor has a Y^1 term; the product diverges')
    num, den = F, LaurentPoly.const(1)
    for d, e in exps.items():
        binom = 1 - LaurentPoly.monomial(d)
        if e > 0:
            num = num * binom ** e
        else:
            den = den * binom ** -e
    return EulerSplit(exps, num, den, D)


def _prime_tail(split, P):
    """Bound T with Π_{p > P} G(1/p) in [1 - 2T, 1/(1 - 2T)]."""
    S = split.tail_constant()
    if not S:
        return Fraction(0)
    den_min = Fraction(1)
    for d, e in split.exponents.items():
        if e < 0:
            den_min *= (1 - Fraction(1, P ** d)) ** -e
    per_prime = S / den_min / Fraction(P) ** (split.D + 1)
    if per_prime > Fraction(1, 2):
        return None
    return S / den_min / Fraction(P) ** split.D / split.D


def _euler_product(split, eps):
    P = 16
    while True:
        T = _prime_tail(split, P)
        if T is not None and 4 * T < eps:
            break
        P *= 2
    digits = _digits(eps) + 6
    unit = Fraction(1, 10 ** digits)
    value = Interval.point(1)
    primes = list(sympy.primerange(2, P + 1))
    for p in primes:
        y = Fraction(1, p)
        value = (value * (split.num(y) / split.den(y))).rounded(digits)
        value = Interval(value.lo - unit, value.hi + unit)
    if T:
        value = value * Interval(1 - 2 * T, 1 / (1 - 2 * T))
    log.debug('Euler product over %d primes, tail bound %s', len(primes), float(T))
    return value


def gamma_constant(n, kind, precision=Fraction(1, 10 ** 12)):
    """γ_{n,0} or γ_{n,n} as an interval of width at most `precision`.

    The Euler factor is split as Π_d (1 - Y^d)^{-e_d} · G(Y), so the
    product becomes Π_d ζ(d)^{e_d} times a fast-converging product over G.
    """
    precision = Fraction(precision)
    split = split_euler_factor(gamma_euler_factor(n, kind))
    eps = precision / 16
    for _ in range(6):
        value = _euler_product(split, eps)
        for d, e in sorted(split.exponents.items()):
            value = (value * zeta_value(d, eps / (4 * (abs(e) + 1))) ** e).rounded(_digits(eps) + 6)
        if value.width <= precision:
            return value
        eps /= 1000
    raise ComputationError(f'gamma_{{{n},{kind}}} did not reach precision {precision}')


@dataclass(frozen=True)
class ZetaProduct:
    """coeff · Π ζ(s)^{e_s} · γ, an exact description of a real constant."""
    coeff: Fraction
    zetas: tuple = ()
    gamma: tuple = None
    conditional: bool = False

    @classmethod
    def build(cls, coeff, zetas, gamma=None, conditional=False):
        counts = Counter()
        for s, e in zetas:
            counts[s] += e
        return cls(Fraction(coeff), tuple(sorted((s, e) for s, e in counts.items() if e)),
                   gamma, conditional)

    def interval(self, precision):
        precision = Fraction(precision)
        eps = precision / 16
        for _ in range(6):
            value = Interval.point(self.coeff)
            for s, e in self.zetas:
                value = (value * zeta_value(s, eps / (4 * (abs(e) + 1))) ** e).rounded(_digits(eps) + 6)
            if self.gamma is not None:
                value = value * gamma_constant(*self.gamma, precision=eps)
            if value.width <= precision:
                return value
            eps /= 1000
        raise ComputationError(f'constant {self} did not reach precision {precision}')

    def zeta_values_used(self):
        used = [f'zeta({s})' for s, _ in self.zetas]
        if self.gamma is not None:
            used.append(f'gamma({self.gamma[0]},{self.gamma[1]})')
        return used

    def sympy_expr(self):
        """Symbolic form; even zeta values collapse to powers of pi."""
        expr = sympy.Rational(self.coeff.numerator, self.coeff.denominator)
        for s, e in self.zetas:
            expr *= sympy.zeta(s) ** e
        if self.gamma is not None:
            expr *= sympy.Symbol(f'gamma_{self.gamma[0]}_{self.gamma[1]}')
        return sympy.simplify(expr)

    def __str__(self):
        return str(self.sympy_expr())


@dataclass(frozen=True)
class AsymptoticReport:
    abscissa: Fraction
    pole_order: int
    constant: Interval
    expression: str
    conditional: bool
    zeta_values_used: list = field(default_factory=list)

    def to_json(self):
        return {'abscissa': frac_to_str(self.abscissa),
                'pole_order': self.pole_order,
                'constant': self.expression,
                'constant_lo': frac_to_str(self.constant.lo),
                'constant_hi': frac_to_str(self.constant.hi),
                'conditional': self.conditional,
                'zeta_values_used': list(self.zeta_values_used)}


def _check_kind(kind):
    if kind not in ('A', 'C'):
        raise ValueError(f'Unknown type: {kind}')


def abscissa(kind, n, ell):
    """Abscissa of convergence and pole order of the global zeta function.

    Type A is Π ζ(s - c) over c in {ℓ, 1, ..., n-1}: the abscissa is the
    largest c plus one and the pole order its multiplicity.
    """
    _check_kind(kind)
    if kind == 'A':
        shifts = Counter([ell] + list(range(1, n)))
        top = max(shifts)
        return Fraction(top + 1), shifts[top]
    alpha = Fraction(n + 1, 2) + Fraction(1 + max(0, ell - n), n)
    return alpha, 2 if ell == n else 1


def global_zeta_quotient(kind, n, ell):
    """Global zeta function as Π ζ(a s - b) / Π ζ(c s - d).

    Returns:
        (num, den): Lists of (a, b) pairs.

    Raises:
        NotImplementedForParameters: Type C with n >= 3.
    """
    _check_kind(kind)
    if kind == 'A':
        return [(1, ell)] + [(1, k) for k in range(1, n)], []
    if n == 1:
        return [(1, 1), (1, ell)], []
    if n == 2:
        return [(2, 2), (2, 3), (2, ell), (2, ell + 1)], [(4, ell + 2)]
    raise NotImplementedForParameters(f'type C, n={n} is not a quotient of zeta functions')


def _limit_constant(kind, n, ell):
    """k = lim Z(s)/ζ(n(s - α) + 1)^{order} and the factor list it came from."""
    alpha, order = abscissa(kind, n, ell)
    num, den = global_zeta_quotient(kind, n, ell)
    step = 1 if kind == 'A' else n
    coeff = Fraction(1)
    zetas = []
    poles = 0
    for sign, factors in ((1, num), (-1, den)):
        for a, b in factors:
            arg = a * alpha - b
            if sign == 1 and arg == 1:
                poles += 1
                coeff *= Fraction(step, a)
                continue
            if arg.denominator != 1 or arg < 2:
                raise NotImplementedForParameters(f'zeta({arg}) at the abscissa')
            zetas.append((int(arg), sign))
    if poles != order:
        raise ComputationError(f'expected a pole of order {order}, found {poles}')
    return ZetaProduct.build(coeff, zetas)


def _gamma_route(n, ell):
    if ell in (0, 2 * n):
        zetas = [(comb(i + 1, 2) + 1, 1) for i in range(1, n + 1)]
        den = n * n + n + 2 if ell == 0 else n * n + 3 * n + 2
        return ZetaProduct.build(Fraction(2 * n, den), zetas, gamma=(n, 0))
    if ell == n:
        zetas = [(comb(i + 1, 2) + 1, 1) for i in range(1, n)]
        return ZetaProduct.build(Fraction(n, n * n + n + 2), zetas, gamma=(n, 'n'),
                                 conditional=True)
    raise NotImplementedForParameters(f'no gamma formula for ell={ell}')


def constant_expression(kind, n, ell, route='auto'):
    """Exact description of the constant c_{n,ℓ} of the partial-sum asymptotics.

    Args:
        kind (str): 'A' or 'C'.
        route (str): 'zeta-quotient' uses the limit k_{n,ℓ} of a zeta
            quotient; 'gamma' uses the γ Euler products (type C, ℓ in
            {0, n, 2n}); 'auto' takes the first that applies.

    Raises:
        NotImplementedForParameters: Type C with n >= 3 and ℓ not in
            {0, n, 2n}, or ℓ outside the supported range.
    """
    _check_kind(kind)
    if kind == 'A':
        if ell < 0:
            raise NotImplementedForParameters('type A constants need ell >= 0')
        alpha, order = abscissa(kind, n, ell)
        k = _limit_constant(kind, n, ell)
        return ZetaProduct.build(k.coeff / (alpha * factorial(order - 1)), k.zetas)
    if not 0 <= ell <= 2 * n:
        raise NotImplementedForParameters(f'type C constants need 0 <= ell <= {2 * n}')
    if route == 'auto':
        route = 'zeta-quotient' if n <= 2 else 'gamma'
    if route == 'zeta-quotient':
        alpha, order = abscissa(kind, n, ell)
        k = _limit_constant(kind, n, ell)
        scale = Fraction(2 * n, order * (n * n + max(n, 2 * ell - n) + 2))
        return ZetaProduct.build(k.coeff * scale, k.zetas)
    if route == 'gamma':
        expr = _gamma_route(n, ell)
        if expr.conditional and not check_igusa_ln(n):
            raise NotImplementedForParameters(f'Igusa form of Z_{{{n},{n}}} fails')
        return expr
    raise ValueError(f'Unknown route: {route}')


def asymptotic_constant(kind, n, ell, precision=Fraction(1, 10 ** 6), route='auto'):
    """Report abscissa, pole order and an interval for the constant c_{n,ℓ}."""
    alpha, order = abscissa(kind, n, ell)
    expr = constant_expression(kind, n, ell, route)
    value = expr.interval(Fraction(precision))
    log.debug('constant %s n=%d ell=%d: %s in %s', kind, n, ell, expr, value)
    return AsymptoticReport(alpha, order, value, str(expr), expr.conditional,
                            expr.zeta_values_used())


@dataclass(frozen=True)
class DirichletCoefficients:
    """table[m] for 1 <= m <= M; table[0] is unused."""
    kind: str
    n: int
    ell: int
    table: tuple

    @property
    def bound(self):
        return len(self.table) - 1

    def __getitem__(self, m):
        return self.table[m]

    def partial_sum(self, N):
        return sum((Fraction(c) for c in self.table[1:N + 1]), Fraction(0))

    def is_multiplicative(self, pairs=None):
        """table[ab] == table[a] table[b] for the given coprime pairs (all in range by default)."""
        M = self.bound
        if pairs is None:
            pairs = ((a, b) for a in range(2, M + 1) for b in range(a + 1, M // a + 1)
                     if gcd(a, b) == 1)
        return all(self.table[a * b] == self.table[a] * self.table[b] for a, b in pairs)

    def support_ok(self):
        """Type C coefficients vanish off the n-th powers."""
        if self.kind == 'A' or self.n == 1:
            return True
        powers = {r ** self.n for r in range(1, int(round(self.bound ** (1 / self.n))) + 2)}
        return all(not c or m in powers for m, c in enumerate(self.table) if m)

    def to_json(self):
        return {'type': self.kind, 'n': self.n, 'ell': self.ell,
                'coefficients': [frac_to_str(c) for c in self.table[1:]]}


def _exact(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def global_coeffs(kind, n, ell, M, max_m=MAX_GLOBAL_M):
    """Dirichlet coefficients of the global zeta function up to M.

    Each local factor at q = p is expanded once symbolically in t and
    then evaluated; the table is filled multiplicatively by a prime sieve.

    Raises:
        SizeLimit: If M > max_m.
    """
    check_size(M, max_m, 'Dirichlet coefficient range')
    if M < 1:
        raise RangeError('M must be positive')
    zeta = local_zeta(kind, n, ell)
    top = max(1, M.bit_length() - 1)
    series = zeta.expand(top)
    table = np.ones(M + 1, dtype=object)
    table[0] = 0
    for p in progress(list(sympy.primerange(2, M + 1)), desc='sieve'):
        pj, j = p, 1
        while pj <= M:
            c = _exact(series[j](p))
            if c != 1:
                idx = np.arange(pj, M + 1, pj)
                idx = idx[(idx // pj) % p != 0]
                table[idx] = table[idx] * c
            pj *= p
            j += 1
    log.debug('global coefficients %s n=%d ell=%d up to %d', kind, n, ell, M)
    return DirichletCoefficients(kind, n, ell, tuple(_exact(c) for c in table))


def mobius_table(M):
    mu = np.ones(M + 1, dtype=np.int64)
    mu[0] = 0
    for p in sympy.primerange(2, M + 1):
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def _zeta_series(a, b, M, mu=None):
    """Coefficients of ζ(a s - b), or of 1/ζ(a s - b) when `mu` is given."""
    f = np.zeros(M + 1, dtype=object)
    r = 1
    while r ** a <= M:
        c = _exact(Fraction(r) ** b)
        f[r ** a] = c if mu is None else int(mu[r]) * c
        r += 1
    return f


def dirichlet_convolve(f, g, M):
    out = np.zeros(M + 1, dtype=object)
    for i in np.nonzero(f)[0]:
        i = int(i)
        out[i::i] = out[i::i] + f[i] * g[1:M // i + 1]
    return out


def zeta_quotient_coeffs(num, den, M):
    """Dirichlet coefficients up to M of Π ζ(a s - b) / Π ζ(c s - d).

    Args:
        num (list): (a, b) pairs in the numerator.
        den (list): (c, d) pairs in the denominator.
    """
    check_size(M, MAX_GLOBAL_M, 'Dirichlet coefficient range')
    out = np.zeros(M + 1, dtype=object)
    out[1] = 1
    mu = mobius_table(M) if den else None
    for a, b in num:
        out = dirichlet_convolve(out, _zeta_series(a, b, M), M)
    for c, d in den:
        out = dirichlet_convolve(out, _zeta_series(c, d, M, mu), M)
    return tuple(_exact(x) for x in out)


def check_global_identity(kind, n, ell, M):
    """Euler-product coefficients equal those of the zeta quotient up to M."""
    num, den = global_zeta_quotient(kind, n, ell)
    return global_coeffs(kind, n, ell, M).table == zeta_quotient_coeffs(num, den, M)


def oracle_coefficient(kind, n, ell, P, m):
    """C(m) by enumeration: the average of ℰ_ℓ over lattices of co-index m."""
    if kind == 'A':
        return avg_coeff(P, ell, m, 'A')
    root = round(m ** (1 / n))
    for r in (root - 1, root, root + 1):
        if r >= 1 and r ** n == m:
            return avg_coeff(P, ell, r, 'C')
    return Fraction(0)


def multiplicativity_check(kind, n, ell, pairs, P=None):
    """C(ab) == C(a) C(b) for coprime pairs, from the table or, given P, by enumeration."""
    pairs = list(pairs)
    for a, b in pairs:
        if gcd(a, b) != 1:
            raise ValueError(f'{a} and {b} are not coprime')
    if P is not None:
        cache = {}

        def coeff(m):
            if m not in cache:
                cache[m] = oracle_coefficient(kind, n, ell, P, m)
            return cache[m]

        return all(coeff(a * b) == coeff(a) * coeff(b) for a, b in pairs)
    M = max((a * b for a, b in pairs), default=1)
    return global_coeffs(kind, n, ell, M).is_multiplicative(pairs)


@dataclass(frozen=True)
class ProbeResult:
    N: int
    partial_sum: Fraction
    predicted_lo: str
    predicted_hi: str
    ratio: float

    def to_json(self):
        return {'N': self.N, 'sum': frac_to_str(self.partial_sum),
                'predicted_lo': self.predicted_lo, 'predicted_hi': self.predicted_hi,
                'ratio': self.ratio}


def partial_sum_probe(kind, n, ell, N, precision=Fraction(1, 10 ** 6)):
    """Σ_{m<=N} C(m) next to the prediction c N^α (log N)^{order-1}.

    Diagnostic only; the ratio converges slowly.
    """
    report = asymptotic_constant(kind, n, ell, precision)
    total = global_coeffs(kind, n, ell, N).partial_sum(N)
    alpha = report.abscissa
    with mp.workdps(30):
        logN = mp.log(N)
        scale = mp.mpf(N) ** (mp.mpf(alpha.numerator) / alpha.denominator)
        scale *= logN ** (report.pole_order - 1)
        lo = mp.mpf(report.constant.lo.numerator) / report.constant.lo.denominator * scale
        hi = mp.mpf(report.constant.hi.numerator) / report.constant.hi.denominator * scale
        ratio = None
        if lo > 0:
            ratio = float(mp.mpf(total.numerator) / total.denominator / ((lo + hi) / 2))
        return ProbeResult(N, total, mp.nstr(lo, 15), mp.nstr(hi, 15), ratio)
