"""Exact arithmetic in the symbols q and t.

Provides Laurent polynomials in one variable, polynomials in (q, t) that
are Laurent in q, rational functions in (q, t) with a canonical form,
quotients by products of binomials 1 - q^a t^b, and truncated expansions
in t. All coefficients are `fractions.Fraction`; nothing here is
approximate.
"""
import logging
import sympy

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from util import (ZeroDenominator, NotExpandable, PoleAtPoint,
                  NonMultipleExponent, frac_to_str, str_to_frac)

log = logging.getLogger(__name__)

_Q, _T = sympy.symbols('q t')


def _scalar(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def _power(base, e):
    """Exact power of a rational, raising `PoleAtPoint` for 0 ** negative."""
    if e < 0:
        if base == 0:
            raise PoleAtPoint('negative power of zero')
        return Fraction(1) / (Fraction(base) ** -e)
    return Fraction(base) ** e


class LaurentPoly:
    """Laurent polynomial in one variable with rational coefficients.

    Args:
        terms (dict): Map from integer exponent to coefficient. Zero
            coefficients are dropped.
    """
    __slots__ = ('terms',)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs, shift=0):
        """Build from a dense list, coefficient `coeffs[i]` at exponent i+shift."""
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        c = _scalar(other)
        if c is None:
            return None
        return LaurentPoly.const(c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError('Only monomials have Laurent inverses')
            (e, c), = self.terms.items()
            return LaurentPoly({e * k: Fraction(1) / c ** -k})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __call__(self, y):
        """Evaluate exactly at the rational `y`."""
        y = Fraction(y)
        return sum((c * _power(y, e) for e, c in self.terms.items()),
                   Fraction(0))

    def coeff(self, e):
        return self.terms.get(e, Fraction(0))

    @property
    def degree(self):
        return max(self.terms) if self.terms else None

    @property
    def valuation(self):
        return min(self.terms) if self.terms else None

    def is_polynomial(self):
        return not self.terms or self.valuation >= 0

    def is_monomial(self):
        return len(self.terms) == 1

    def coefficients(self):
        """Dense coefficient list from the valuation up to the degree."""
        if not self.terms:
            return []
        lo = self.valuation
        return [self.coeff(e) for e in range(lo, self.degree + 1)]

    def is_palindromic(self):
        coeffs = self.coefficients()
        return coeffs == coeffs[::-1]

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def substitute_inverse(self):
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def substitute_power(self, k):
        """Y -> Y^k."""
        return LaurentPoly({e * k: c for e, c in self.terms.items()})

    def exact_div(self, other):
        """Divide in the Laurent ring, raising if the division leaves a remainder.

        Raises:
            ZeroDenominator: If `other` is zero.
            ValueError: If `other` does not divide `self`.
        """
        other = self._coerce(other)
        if not other:
            raise ZeroDenominator('division by the zero Laurent polynomial')
        if not self.terms:
            return LaurentPoly()
        a = self.shift(-self.valuation).coefficients()
        b = other.shift(-other.valuation).coefficients()
        # Descending long division of polynomials with nonzero constant terms
        rem = list(a)
        quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
        lead = b[-1]
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(b) - 1] / lead
            quot[i] = c
            if c:
                for j, bj in enumerate(b):
                    rem[i + j] -= c * bj
        if any(rem):
            raise ValueError(f'{other} does not divide {self}')
        return LaurentPoly.from_coeffs(quot, self.valuation - other.valuation)

    def to_str(self, var='Y'):
        if not self.terms:
            return '0'
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if e == 0:
                body = frac_to_str(mag)
            else:
                mono = var if e == 1 else f'{var}^{e}'
                body = mono if mag == 1 else f'{frac_to_str(mag)}*{mono}'
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ('-' if first_sign == '-' else '') + first
        for sign, body in parts[1:]:
            out += f' {sign} {body}'
        return out

    def latex(self, var='Y'):
        return _latex_poly({(e, 0): c for e, c in self.terms.items()},
                           (var, None), descending=True)

    def to_json(self):
        return [[frac_to_str(c), e] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({int(e): str_to_frac(c) for c, e in data})

    def __repr__(self):
        return f'LaurentPoly({self.to_str()})'

    __str__ = to_str


Y = LaurentPoly.monomial(1)


def lp_arith(a, b, op):
    """Exact add, sub or mul of two Laurent polynomials."""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ValueError(f'Unknown operation: {op}')


def _latex_poly(terms, names, descending=False):
    """LaTeX for a map (qexp, texp) -> coeff, with `names` = (q name, t name)."""
    if not terms:
        return '0'
    qname, tname = names
    order = sorted(terms, key=lambda k: (k[1], k[0]), reverse=descending)
    out = ''
    for i, key in enumerate(order):
        c = terms[key]
        mono = ''
        for name, e in zip((qname, tname), key):
            if name is None or e == 0:
                continue
            mono += name if e == 1 else f'{name}^{{{e}}}'
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f'{_latex_frac(mag)} {mono}'
        else:
            body = _latex_frac(mag)
        if i == 0:
            out = ('-' if c < 0 else '') + body
        else:
            out += (' - ' if c < 0 else ' + ') + body
    return out


def _latex_frac(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f'\\tfrac{{{x.numerator}}}{{{x.denominator}}}'


class BivariatePoly:
    """Polynomial in t with coefficients Laurent polynomials in q.

    Args:
        terms (dict): Map from (q-exponent, t-exponent) to coefficient.
            t-exponents must be nonnegative.
    """
    __slots__ = ('terms',)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (qe, te), c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                if te < 0:
                    raise ValueError(f'negative t-exponent {te}')
                clean[(int(qe), int(te))] = c
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, qe, te, c=1):
        return cls({(qe, te): c})

    @classmethod
    def binomial(cls, a, b):
        """1 - q^a t^b."""
        if (a, b) == (0, 0):
            return cls()
        return cls({(0, 0): 1, (a, b): -1})

    @classmethod
    def from_t_coefficients(cls, coeffs):
        terms = {}
        for te, lp in enumerate(coeffs):
            for qe, c in lp.terms.items():
                terms[(qe, te)] = c
        return cls(terms)

    @classmethod
    def from_laurent(cls, lp):
        """Embed a Laurent polynomial in q."""
        return cls({(e, 0): c for e, c in lp.terms.items()})

    def _coerce(self, other):
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, LaurentPoly):
            return BivariatePoly.from_laurent(other)
        c = _scalar(other)
        if c is None:
            return None
        return BivariatePoly.const(c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for (q1, t1), c1 in self.terms.items():
            for (q2, t2), c2 in other.terms.items():
                key = (q1 + q2, t1 + t2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError('negative powers are not polynomials')
        result = BivariatePoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, q0, t0):
        q0, t0 = Fraction(q0), Fraction(t0)
        return sum((c * _power(q0, qe) * _power(t0, te)
                    for (qe, te), c in self.terms.items()), Fraction(0))

    __call__ = evaluate

    def shift(self, qa, tb):
        """Multiply by the monomial q^qa t^tb."""
        return BivariatePoly({(qe + qa, te + tb): c
                              for (qe, te), c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        return BivariatePoly({k: v * c for k, v in self.terms.items()})

    @property
    def t_degree(self):
        return max(te for _, te in self.terms) if self.terms else -1

    @property
    def q_valuation(self):
        return min(qe for qe, _ in self.terms) if self.terms else 0

    @property
    def t_valuation(self):
        return min(te for _, te in self.terms) if self.terms else 0

    def is_monomial(self):
        return len(self.terms) == 1

    def t_coefficients(self):
        """List of LaurentPoly in q, entry k holding the t^k coefficient."""
        coeffs = [dict() for _ in range(self.t_degree + 1)]
        for (qe, te), c in self.terms.items():
            coeffs[te][qe] = c
        return [LaurentPoly(d) for d in coeffs]

    def t_coefficient(self, k):
        return LaurentPoly({qe: c for (qe, te), c in self.terms.items()
                            if te == k})

    def substitute_q_inverse(self):
        return BivariatePoly({(-qe, te): c for (qe, te), c in self.terms.items()})

    def substitute_t_power(self, n, c):
        """Apply t^n -> q^c t^n. Every t-exponent must be a multiple of `n`.

        Raises:
            NonMultipleExponent: If some t-exponent is not divisible by `n`.
        """
        out = {}
        for (qe, te), v in self.terms.items():
            if te % n:
                raise NonMultipleExponent(f't-exponent {te} is not a multiple of {n}')
            out[(qe + c * (te // n), te)] = v
        return BivariatePoly(out)

    def substitute_monomials(self, qmap, tmap):
        """q -> q^qmap[0] t^qmap[1], t -> q^tmap[0] t^tmap[1]."""
        out = {}
        for (qe, te), c in self.terms.items():
            key = (qe * qmap[0] + te * tmap[0], qe * qmap[1] + te * tmap[1])
            out[key] = out.get(key, 0) + c
        return BivariatePoly(out)

    def divide_binomial(self, a, b):
        """Exact quotient by 1 - q^a t^b, or None when it does not divide.

        Treats the polynomial as one in t over the Laurent ring in q: the
        quotient Q satisfies Q_k = N_k + q^a Q_{k-b}.
        """
        if b <= 0:
            raise ValueError('binomial must involve a positive power of t')
        if not self.terms:
            return BivariatePoly()
        coeffs = self.t_coefficients()
        deg = len(coeffs) - 1
        if deg < b:
            return None
        quot = []
        for k in range(deg + 1):
            qk = coeffs[k]
            if k >= b:
                qk = qk + quot[k - b].shift(a)
            quot.append(qk)
        if any(quot[k] for k in range(deg - b + 1, deg + 1)):
            return None
        return BivariatePoly.from_t_coefficients(quot[:deg - b + 1])

    def to_sympy_poly(self, qshift=0):
        """sympy Poly in (q, t) of q^qshift * self; exponents must be >= 0."""
        data = {(qe + qshift, te): sympy.Rational(c.numerator, c.denominator)
                for (qe, te), c in self.terms.items()}
        return sympy.Poly.from_dict(data, _Q, _T, domain='QQ')

    @classmethod
    def from_sympy_poly(cls, poly, qshift=0):
        terms = {}
        for (qe, te), c in poly.terms():
            c = sympy.Rational(c)
            terms[(qe - qshift, te)] = Fraction(int(c.p), int(c.q))
        return cls(terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_json(self):
        return [[frac_to_str(c), qe, te] for (qe, te), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data):
        return cls({(int(qe), int(te)): str_to_frac(c) for c, qe, te in data})

    def latex(self):
        return _latex_poly(self.terms, ('q', 't'))

    def __repr__(self):
        body = ' + '.join(f'{frac_to_str(c)}*q^{qe}*t^{te}'
                          for (qe, te), c in self.sorted_terms()) or '0'
        return f'BivariatePoly({body})'


def _split_monomial(terms):
    """Return (qv, tv, rest) with terms = q^qv t^tv * rest and rest polynomial."""
    qv = min(qe for qe, _ in terms)
    tv = min(te for _, te in terms)
    rest = {(qe - qv, te - tv): c for (qe, te), c in terms.items()}
    return qv, tv, rest


class RationalFunctionQT:
    """Rational function in (q, t) kept in canonical form.

    Canonical form: numerator and denominator are coprime polynomials in
    q and t (no negative exponents), and the lexicographically least
    (q-exponent, t-exponent) term of the denominator has coefficient 1.

    Args:
        num (BivariatePoly): Numerator, Laurent in q.
        den (BivariatePoly): Denominator, Laurent in q. Defaults to 1.
        coprime (bool): Caller guarantees num and den share no factor
            other than monomials; skips the gcd.
    """
    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, coprime=False):
        num_terms = num.terms if isinstance(num, BivariatePoly) else dict(num)
        if den is None:
            den_terms = {(0, 0): Fraction(1)}
        else:
            den_terms = den.terms if isinstance(den, BivariatePoly) else dict(den)
        self.num, self.den = _canonical(num_terms, den_terms, coprime)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionQT):
            try:
                other = as_rational(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = as_rational(other)
        return RationalFunctionQT(self.num * other.den + other.num * self.den,
                                  self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQT._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-as_rational(other))

    def __rsub__(self, other):
        return as_rational(other) + (-self)

    def __mul__(self, other):
        other = as_rational(other)
        return RationalFunctionQT(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_rational(other)
        if not other.num:
            raise ZeroDenominator('division by zero rational function')
        return RationalFunctionQT(self.num * other.den, self.den * other.num)

    def evaluate(self, q0, t0):
        return rf_evaluate(self, q0, t0)

    def to_json(self):
        return {'num': self.num.to_json(), 'den': self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(BivariatePoly.from_json(data['num']),
                   BivariatePoly.from_json(data['den']))

    def latex(self):
        if self.den == BivariatePoly.const(1):
            return self.num.latex()
        return f'\\frac{{{self.num.latex()}}}{{{self.den.latex()}}}'

    def __repr__(self):
        return f'RationalFunctionQT({self.num!r} / {self.den!r})'


def as_rational(x):
    if isinstance(x, RationalFunctionQT):
        return x
    if isinstance(x, BinomialQuotient):
        return x.to_rational()
    if isinstance(x, (BivariatePoly, LaurentPoly)) or _scalar(x) is not None:
        num = x if isinstance(x, BivariatePoly) else BivariatePoly()._coerce(x)
        return RationalFunctionQT(num)
    raise TypeError(f'cannot convert {type(x).__name__} to a rational function')


def _canonical(num_terms, den_terms, coprime):
    den_terms = {k: Fraction(c) for k, c in den_terms.items() if c}
    num_terms = {k: Fraction(c) for k, c in num_terms.items() if c}
    if not den_terms:
        raise ZeroDenominator('denominator is zero')
    if not num_terms:
        return BivariatePoly(), BivariatePoly.const(1)
    nq, nt, num_rest = _split_monomial(num_terms)
    dq, dt, den_rest = _split_monomial(den_terms)
    num_p, den_p = BivariatePoly(num_rest), BivariatePoly(den_rest)
    if not coprime and not den_p.is_monomial():
        g = sympy.gcd(num_p.to_sympy_poly(), den_p.to_sympy_poly())
        if g.total_degree() > 0:
            num_p = BivariatePoly.from_sympy_poly(num_p.to_sympy_poly().exquo(g))
            den_p = BivariatePoly.from_sympy_poly(den_p.to_sympy_poly().exquo(g))
    dq_net, dt_net = nq - dq, nt - dt
    num_p = num_p.shift(max(dq_net, 0), max(dt_net, 0))
    den_p = den_p.shift(max(-dq_net, 0), max(-dt_net, 0))
    lead = den_p.terms[min(den_p.terms)]
    if lead != 1:
        num_p, den_p = num_p.scale(1 / lead), den_p.scale(1 / lead)
    return num_p, den_p


def rf_normalize(num, den):
    """Canonical coprime form of num/den.

    Raises:
        ZeroDenominator: If `den` is zero.
    """
    return RationalFunctionQT(num, den)


def rf_substitute_q_inverse(f):
    """Apply q -> 1/q to a rational function and re-normalize."""
    return RationalFunctionQT(f.num.substitute_q_inverse(),
                              f.den.substitute_q_inverse(), coprime=True)


def _invert_terms(terms):
    return {(-qe, -te): c for (qe, te), c in terms.items()}


def rf_invert(f):
    """Apply (q, t) -> (1/q, 1/t), i.e. q -> 1/q with t = q^{-s} held to s."""
    return RationalFunctionQT(_invert_terms(f.num.terms),
                              _invert_terms(f.den.terms), coprime=True)


def rf_evaluate(f, q0, t0):
    """Exact value of `f` at (q0, t0).

    Raises:
        PoleAtPoint: If the denominator vanishes at (q0, t0).
    """
    try:
        d = f.den.evaluate(q0, t0)
    except PoleAtPoint:
        d = 0
    if d == 0:
        raise PoleAtPoint(f'denominator vanishes at q={q0}, t={t0}')
    return f.num.evaluate(q0, t0) / d


@dataclass(frozen=True)
class TruncatedSeries:
    """Expansion in t up to t^order with Laurent-in-q coefficients."""
    order: int
    coefficients: tuple
    variable: str = 't'

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError('coefficient list length must be order + 1')

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def evaluate(self, q0):
        """Coefficients at q = q0 as a list of rationals."""
        return [c(q0) for c in self.coefficients]

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(order, tuple(self[k] + other[k]
                                            for k in range(order + 1)))

    def __mul__(self, other):
        order = min(self.order, other.order)
        coeffs = []
        for k in range(order + 1):
            acc = LaurentPoly()
            for j in range(k + 1):
                acc = acc + self[j] * other[k - j]
            coeffs.append(acc)
        return TruncatedSeries(order, tuple(coeffs))

    def to_json(self):
        return [c.to_json() for c in self.coefficients]


def rf_expand(f, order):
    """Expand `f` as a power series in t up to t^order.

    Raises:
        NotExpandable: If the t^0 part of the denominator is zero or is
            not a unit (a single q-monomial) of the Laurent ring.
    """
    if order < 0:
        raise ValueError('order must be nonnegative')
    den = f.den.t_coefficients()
    d0 = den[0] if den else LaurentPoly()
    if not d0:
        raise NotExpandable('denominator vanishes at t = 0')
    if not d0.is_monomial():
        raise NotExpandable(f'constant term {d0} of the denominator is not a unit')
    d0_inv = d0 ** -1
    num = f.num.t_coefficients()
    series = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else LaurentPoly()
        for j in range(1, min(k, len(den) - 1) + 1):
            if den[j]:
                acc = acc - den[j] * series[k - j]
        series.append(acc * d0_inv)
    return TruncatedSeries(order, tuple(series))


class BinomialQuotient:
    """numerator / prod (1 - q^a t^b) with the factor list kept explicit.

    This is the form in which closed zeta formulas are assembled: equality,
    inversion and substitutions stay cheap because the denominator never
    has to be multiplied out.

    Args:
        numerator (BivariatePoly): Numerator, Laurent in q.
        factors (iterable): (a, b) pairs with b > 0, one per binomial
            1 - q^a t^b, repeated for multiplicity.
    """
    __slots__ = ('numerator', 'factors', '_rf')

    def __init__(self, numerator, factors=()):
        factors = tuple(sorted((int(a), int(b)) for a, b in factors))
        if any(b <= 0 for _, b in factors):
            raise ValueError('binomial factors need a positive t-exponent')
        self.numerator = numerator
        self.factors = factors
        self._rf = None

    @property
    def denominator(self):
        den = BivariatePoly.const(1)
        for a, b in self.factors:
            den = den * BivariatePoly.binomial(a, b)
        return den

    def factor_counts(self):
        return Counter(self.factors)

    def __eq__(self, other):
        if not isinstance(other, BinomialQuotient):
            return NotImplemented
        c1, c2 = self.factor_counts(), other.factor_counts()
        n1, n2 = self.numerator, other.numerator
        for f in set(c1) | set(c2):
            common = max(c1[f], c2[f])
            for _ in range(common - c1[f]):
                n1 = n1 * BivariatePoly.binomial(*f)
            for _ in range(common - c2[f]):
                n2 = n2 * BivariatePoly.binomial(*f)
        return n1 == n2

    __hash__ = None

    def __mul__(self, other):
        if isinstance(other, BinomialQuotient):
            return BinomialQuotient(self.numerator * other.numerator,
                                    self.factors + other.factors)
        return BinomialQuotient(self.numerator * other, self.factors)

    __rmul__ = __mul__

    def divide_by(self, a, b):
        """Append the factor 1/(1 - q^a t^b)."""
        return BinomialQuotient(self.numerator, self.factors + ((a, b),))

    def reduced(self):
        """Cancel every binomial factor that divides the numerator exactly."""
        num = self.numerator
        kept = []
        for f in self.factors:
            quot = num.divide_binomial(*f) if num else None
            if quot is not None:
                num = quot
            else:
                kept.append(f)
        if len(kept) < len(self.factors):
            log.debug('cancelled %d binomial factors', len(self.factors) - len(kept))
        return BinomialQuotient(num, kept)

    def inverted(self):
        """(q, t) -> (1/q, 1/t).

        1/(1 - u^{-1}) = -u/(1 - u), so the factor list is unchanged and
        the numerator picks up the monomial prod(-q^a t^b).
        """
        qa = sum(a for a, _ in self.factors)
        tb = sum(b for _, b in self.factors)
        sign = -1 if len(self.factors) % 2 else 1
        terms = {(-qe + qa, -te + tb): sign * c
                 for (qe, te), c in self.numerator.terms.items()}
        if any(te < 0 for _, te in terms):
            raise ValueError('inversion leaves negative t-exponents')
        return BinomialQuotient(BivariatePoly(terms), self.factors)

    def substitute_t_power(self, n, c):
        """t^n -> q^c t^n on numerator and factors alike."""
        factors = []
        for a, b in self.factors:
            if b % n:
                raise NonMultipleExponent(f'factor t-exponent {b} is not a multiple of {n}')
            factors.append((a + c * (b // n), b))
        return BinomialQuotient(self.numerator.substitute_t_power(n, c), factors)

    def shift(self, qa, tb, c=1):
        return BinomialQuotient(self.numerator.shift(qa, tb).scale(c), self.factors)

    def expand(self, order):
        """Series in t to t^order; each factor is a unit since its t^0 term is 1."""
        coeffs = self.numerator.t_coefficients()
        series = [coeffs[k] if k < len(coeffs) else LaurentPoly()
                  for k in range(order + 1)]
        for a, b in self.factors:
            for k in range(b, order + 1):
                series[k] = series[k] + series[k - b].shift(a)
        return TruncatedSeries(order, tuple(series))

    def evaluate(self, q0, t0):
        den = Fraction(1)
        for a, b in self.factors:
            den *= 1 - _power(Fraction(q0), a) * _power(Fraction(t0), b)
        if den == 0:
            raise PoleAtPoint(f'a binomial factor vanishes at q={q0}, t={t0}')
        return self.numerator.evaluate(q0, t0) / den

    def to_rational(self):
        """Canonical RationalFunctionQT of this quotient (computed once)."""
        if self._rf is None:
            red = self.reduced()
            self._rf = RationalFunctionQT(red.numerator, red.denominator)
        return self._rf

    def to_json(self):
        return {'numerator': self.numerator.to_json(),
                'factors': [[a, b] for a, b in self.factors]}

    def latex(self):
        num = self.numerator.latex()
        if not self.factors:
            return num
        den = ''
        for (a, b), k in sorted(self.factor_counts().items(),
                                key=lambda kv: (kv[0][1], kv[0][0])):
            mono = _latex_poly({(a, b): 1}, ('q', 't'))
            piece = f'(1 - {mono})'
            den += piece if k == 1 else f'{piece}^{{{k}}}'
        return f'\\frac{{{num}}}{{{den}}}'

    def __repr__(self):
        return f'BinomialQuotient({self.numerator!r}, {list(self.factors)})'


def common_denominator_sum(summands):
    """Sum terms coeff / prod(1 - q^a t^b) over their least common factor list.

    Args:
        summands (iterable): Pairs (coeff, factors) with `coeff` a
            BivariatePoly and `factors` a sequence of (a, b) pairs.

    Returns:
        quotient (BinomialQuotient): The sum, not reduced.
    """
    summands = [(coeff, Counter(factors)) for coeff, factors in summands]
    common = Counter()
    for _, counts in summands:
        for f, k in counts.items():
            common[f] = max(common[f], k)
    total = BivariatePoly()
    for coeff, counts in summands:
        term = coeff
        for f, k in common.items():
            for _ in range(k - counts[f]):
                term = term * BivariatePoly.binomial(*f)
        total = total + term
    return BinomialQuotient(total, list(common.elements()))
