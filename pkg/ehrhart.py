"""Lattice polytopes, Ehrhart polynomials and the Hecke action on their coefficients.

Points of a dilate tP are counted on an integer grid with exact
half-space tests. A superlattice Λ ⊇ Z^n is handled either by moving
P into coordinates where Λ becomes Z^n ('transform') or by summing
over the translates r + Z^n that make up Λ ('cosets').
"""
import itertools
import logging
import numpy as np
import sympy

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, gcd, lcm
from lattices import (SymplecticCoset, enumerate_similitude_cosets,
                      enumerate_sublattices, enumerate_superlattices,
                      enumerate_symplectic_cosets, inverse_transpose)
from qcombinat import Partition
from util import (DimensionLimit, InterpolationInconsistent, RouteMismatch,
                  UnboundedInput, ZeroCoefficient, check_size, frac_to_str,
                  load_json, progress, str_to_frac)

log = logging.getLogger(__name__)

MAX_AMBIENT_DIM = 4
MAX_POINTS = 20_000_000


def _sym_frac(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _frac_vector(v):
    return tuple(str_to_frac(x) if isinstance(x, str) else Fraction(x) for x in v)


def _integral(v):
    """Smallest positive integer multiple of a rational vector."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many points in Q^n (duplicates removed).

    Args:
        dim_ambient (int): Ambient dimension n.
        vertices (tuple): Generating points; need not all be vertices.
    """
    dim_ambient: int
    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise UnboundedInput('a polytope needs at least one vertex')
        if self.dim_ambient > MAX_AMBIENT_DIM:
            raise DimensionLimit(f'ambient dimension {self.dim_ambient} exceeds {MAX_AMBIENT_DIM}')
        verts = sorted(set(_frac_vector(v) for v in self.vertices))
        if any(len(v) != self.dim_ambient for v in verts):
            raise ValueError('vertex length does not match the ambient dimension')
        object.__setattr__(self, 'vertices', tuple(verts))

    @classmethod
    def from_dict(cls, data):
        if 'vertices' not in data:
            raise UnboundedInput('polytope data has no vertex list')
        ambient = int(data.get('ambient', len(data['vertices'][0]) if data['vertices'] else 0))
        return cls(ambient, tuple(tuple(v) for v in data['vertices']))

    @classmethod
    def from_json(cls, path):
        """Read {"ambient": n, "vertices": [[int, ...], ...]}."""
        return cls.from_dict(load_json(path))

    def to_json(self):
        return {'ambient': self.dim_ambient,
                'vertices': [[str(x) for x in v] for v in self.vertices]}

    def transform(self, M):
        """Image under v -> M v."""
        n = self.dim_ambient
        return LatticePolytope(n, tuple(
            tuple(sum(Fraction(M[i][j]) * v[j] for j in range(n)) for i in range(n))
            for v in self.vertices))

    def right_multiply(self, B):
        """Image under the row action v -> v B."""
        n = self.dim_ambient
        return LatticePolytope(n, tuple(
            tuple(sum(v[i] * Fraction(B[i][j]) for i in range(n)) for j in range(n))
            for v in self.vertices))

    def scale(self, c):
        c = Fraction(c)
        return LatticePolytope(self.dim_ambient, tuple(tuple(c * x for x in v)
                                                       for v in self.vertices))

    def is_lattice_polytope(self):
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def affine_dim(self):
        v0 = self.vertices[0]
        diffs = [[x - y for x, y in zip(v, v0)] for v in self.vertices[1:]]
        return sympy.Matrix(diffs).rank() if diffs else 0

    @cached_property
    def halfspaces(self):
        """(facets, equations): a.x <= b for facets and a.x = b for the affine hull."""
        n = self.dim_ambient
        v0 = self.vertices[0]
        diffs = [[x - y for x, y in zip(v, v0)] for v in self.vertices[1:]]
        if diffs:
            normals = sympy.Matrix(diffs).nullspace()
        else:
            normals = [sympy.eye(n)[:, i] for i in range(n)]
        equations = []
        for a in normals:
            a = _integral([_sym_frac(x) for x in a])
            equations.append((a, sum(ai * xi for ai, xi in zip(a, v0))))
        d = self.affine_dim
        facets = set()
        if d >= 1:
            for subset in itertools.combinations(self.vertices, d):
                rows = [[x - y for x, y in zip(w, subset[0])] for w in subset[1:]]
                rows += [list(a) for a, _ in equations]
                kernel = sympy.Matrix(rows).nullspace() if rows else [
                    sympy.eye(n)[:, i] for i in range(n)]
                if len(kernel) != 1:
                    continue
                a = _integral([_sym_frac(x) for x in kernel[0]])
                b = sum(ai * xi for ai, xi in zip(a, subset[0]))
                vals = [sum(ai * xi for ai, xi in zip(a, v)) for v in self.vertices]
                if all(x <= b for x in vals):
                    facets.add((a, b))
                elif all(x >= b for x in vals):
                    facets.add((tuple(-x for x in a), -b))
        log.debug('polytope with %d vertices: %d facets, %d equations',
                  len(self.vertices), len(facets), len(equations))
        return sorted(facets), equations

    def bounding_box(self):
        n = self.dim_ambient
        return ([min(v[i] for v in self.vertices) for i in range(n)],
                [max(v[i] for v in self.vertices) for i in range(n)])


def _count_grid(poly, t, shift=None, boundary=False):
    """#{z in Z^n : z + shift in tP} (only boundary points if `boundary`)."""
    n = poly.dim_ambient
    shift = shift or (Fraction(0),) * n
    lo, hi = poly.bounding_box()
    ranges = [np.arange(ceil(t * a - s), floor(t * b - s) + 1, dtype=np.int64)
              for a, b, s in zip(lo, hi, shift)]
    size = 1
    for r in ranges:
        size *= len(r)
    if size == 0:
        return 0
    check_size(size, MAX_POINTS, 'lattice point grid')
    grid = np.stack(np.meshgrid(*ranges, indexing='ij'), -1).reshape(-1, n)
    facets, equations = poly.halfspaces
    mask = np.ones(len(grid), dtype=bool)
    on_face = np.zeros(len(grid), dtype=bool)
    for constraints, strict in ((facets, False), (equations, True)):
        for a, b in constraints:
            # a.z <= t b - a.shift, cleared of denominators
            rhs = t * Fraction(b) - sum(ai * si for ai, si in zip(a, shift))
            lhs = grid.dot(np.array(a, dtype=np.int64)) * rhs.denominator
            if strict:
                mask &= lhs == rhs.numerator
            else:
                mask &= lhs <= rhs.numerator
                on_face |= lhs == rhs.numerator
    if boundary:
        mask &= on_face
    return int(mask.sum())


def coset_representatives(basis):
    """Representatives of Λ / Z^n in [0, 1)^n for a superlattice basis."""
    reps = {tuple(Fraction(0) for _ in basis[0])}
    frontier = list(reps)
    gens = [tuple(Fraction(x) % 1 for x in row) for row in basis]
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                s = tuple((a + b) % 1 for a, b in zip(r, g))
                if s not in reps:
                    reps.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(reps)


def _inverse(B):
    inv = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in map(Fraction, row)]
                        for row in B]).inv()
    return [[_sym_frac(x) for x in inv.row(i)] for i in range(inv.rows)]


def count_points(P, dilate, basis=None, method='transform', boundary=False):
    """#(dilate * P ∩ Λ) for Λ spanned by the rows of `basis` (Z^n if None).

    Args:
        P (LatticePolytope): Polytope.
        dilate (int): Nonnegative dilation factor.
        basis (sequence): Rational row basis of Λ ⊇ Z^n.
        method (str): 'transform' maps Λ to Z^n by v -> v B^{-1};
            'cosets' sums over the translates making up Λ.
        boundary (bool): Count only points on the boundary (relative to
            the affine hull).
    """
    if dilate < 0:
        raise ValueError('dilate must be nonnegative')
    if dilate == 0:
        return 0 if boundary and P.affine_dim > 0 else 1
    if basis is None:
        return _count_grid(P, dilate, boundary=boundary)
    if method == 'transform':
        return _count_grid(P.right_multiply(_inverse(basis)), dilate, boundary=boundary)
    if method == 'cosets':
        return sum(_count_grid(P, dilate, shift=r, boundary=boundary)
                   for r in coset_representatives(basis))
    raise ValueError(f'Unknown counting method: {method}')


@dataclass(frozen=True)
class EhrhartPolynomial:
    """E(m) = c_0 + c_1 m + ... + c_n m^n."""
    coefficients: tuple

    def __call__(self, m):
        return sum(c * Fraction(m) ** i for i, c in enumerate(self.coefficients))

    def coefficient(self, ell):
        return self.coefficients[ell] if 0 <= ell < len(self.coefficients) else Fraction(0)

    def to_json(self):
        return [frac_to_str(c) for c in self.coefficients]


def ehrhart_poly(P, basis=None, method='transform', check=True):
    """Ehrhart polynomial of P with respect to Λ by interpolation at m = 0..n.

    Raises:
        InterpolationInconsistent: If E(n+1) or E(n+2) disagrees with a raw count.
    """
    n = P.dim_ambient
    points = [(0, 1)] + [(m, count_points(P, m, basis, method)) for m in range(1, n + 1)]
    x = sympy.Symbol('m')
    poly = sympy.Poly(sympy.interpolate([(a, b) for a, b in points], x), x) \
        if len(points) > 1 else sympy.Poly(1, x)
    coeffs = [Fraction(0)] * (n + 1)
    for (e,), c in poly.terms():
        coeffs[e] = _sym_frac(c)
    result = EhrhartPolynomial(tuple(coeffs))
    if check:
        for m in (n + 1, n + 2):
            raw = count_points(P, m, basis, method)
            if result(m) != raw:
                raise InterpolationInconsistent(
                    f'E({m}) = {result(m)} by interpolation but {raw} by counting')
    return result


def ehrhart_coefficient(P, ell, basis=None, method='transform', check=False):
    return ehrhart_poly(P, basis, method, check).coefficient(ell)


def _coset_matrix(coset):
    return coset.rep if isinstance(coset, SymplecticCoset) else coset


def hecke_action(cosets, ell, P, route='both'):
    """Σ over cosets g of ℰ_ℓ(P) with respect to Λ_g.

    The 'matrix' route counts Z^n-points of g·P; the 'lattice' route
    counts points of P in Λ_g = rows of g^{-T} by coset translates.

    Raises:
        RouteMismatch: If route='both' and the two routes disagree.
    """
    total = Fraction(0)
    for coset in progress(cosets, desc='hecke action'):
        g = _coset_matrix(coset)
        values = {}
        if route in ('matrix', 'both'):
            values['matrix'] = ehrhart_coefficient(P.transform(g), ell)
        if route in ('lattice', 'both'):
            values['lattice'] = ehrhart_coefficient(P, ell, inverse_transpose(g), 'cosets')
        if not values:
            raise ValueError(f'Unknown route: {route}')
        if len(set(values.values())) > 1:
            raise RouteMismatch(f'coset {g}: {values}')
        total += next(iter(values.values()))
    return total


def hecke_cosets_C(n, k, p):
    """Cosets of T^C_{n,k,p}: similitude p for k = 0, class k among similitude p^2 otherwise."""
    m = 1 if k == 0 else 2
    return [c for c in enumerate_symplectic_cosets(n, p, m) if c.hecke_class == k]


def hecke_cosets_A(n, k, p):
    """Cosets of T^A_{n,k,p}: sublattices with quotient (Z/p)^k."""
    return [rec.basis for rec in enumerate_sublattices(n, p, k, 1)
            if rec.type == Partition((1,) * k)]


def avg_coeff(P, ell, m, kind):
    """Average of ℰ_ℓ^Λ(P)/ℰ_ℓ(P) summed over co-index m superlattices.

    Type A uses every superlattice of index m; type C the lattices Λ_g of
    similitude-m symplectic cosets (ambient dimension 2n).

    Raises:
        ZeroCoefficient: If ℰ_ℓ(P) = 0.
    """
    base = ehrhart_coefficient(P, ell)
    if base == 0:
        raise ZeroCoefficient(f'coefficient {ell} of the polytope vanishes')
    if kind == 'A':
        gs = enumerate_superlattices(P.dim_ambient, m)
    elif kind == 'C':
        if P.dim_ambient % 2:
            raise ValueError('type C needs an even ambient dimension')
        gs = enumerate_similitude_cosets(P.dim_ambient // 2, m)
    else:
        raise ValueError(f'Unknown type: {kind}')
    total = sum((ehrhart_coefficient(P.transform(g), ell) for g in progress(gs, desc=f'avg m={m}')),
                Fraction(0))
    return total / base


@dataclass(frozen=True)
class TreeExample:
    """η_P on the p-regular tree around Z^2.

    Attributes:
        center (Fraction): η_P(Z^2).
        rings (dict): radius -> η values of the vertices at that distance.
        normalised (dict): radius -> ring sum divided by the center value.
        series (dict): radius r -> normalised sum over all index-p^r
            superlattices, homothetic ones included.
    """
    center: Fraction
    rings: dict
    normalised: dict
    series: dict

    def to_json(self):
        return {'center': frac_to_str(self.center),
                'rings': {str(r): [frac_to_str(v) for v in vals]
                          for r, vals in sorted(self.rings.items())},
                'normalised': {str(r): frac_to_str(v)
                               for r, v in sorted(self.normalised.items())},
                'series': {str(r): frac_to_str(v) for r, v in sorted(self.series.items())}}


def tree_example(P, p, radius, ell=1):
    """Values η_P([Λ]) = ℰ_ℓ^{Λ_min}(P) for classes within `radius` of [Z^2].

    The class at distance r has a unique p-primitive representative
    Λ ⊇ Z^2 with Λ / Z^2 cyclic of order p^r.
    """
    if P.dim_ambient != 2:
        raise DimensionLimit('the tree example lives in the plane')
    center = ehrhart_coefficient(P, ell)
    rings = {0: [center]}
    for r in range(1, radius + 1):
        values = []
        for rec in progress(enumerate_sublattices(2, p, r, r), desc=f'ring {r}'):
            if rec.type == Partition((r,)):
                values.append(ehrhart_coefficient(P.transform(rec.basis), ell))
        rings[r] = values
    normalised = {r: sum(v) / center for r, v in rings.items()}
    series = {}
    for r in range(radius + 1):
        # p^{-j} Λ contributes p^{jℓ} times the value of Λ
        series[r] = sum(Fraction(p) ** (j * ell) * normalised[r - 2 * j]
                        for j in range(r // 2 + 1))
    return TreeExample(center=center, rings=rings, normalised=normalised, series=series)
