"""Command-line front end for the Ehrhart-Hecke library.

Usage:
    > python run.py VERB [--flag VALUE ...]
    where VERB is one of phi, delta, zeta, expand, verify, enumerate,
    ehrhart, global, asymptotics, tree-example. See `python run.py VERB -h`.

Results go to stdout; logs go to stderr and <save_dir>/<verb>/<name>-NN/log.txt.
Exit codes: 0 success, 1 computation error or failed check, 2 usage error.
"""

import sys
import ujson as json
import util

from analytics import asymptotic_constant, check_global_identity, global_coeffs, \
    multiplicativity_check, partial_sum_probe
from args import get_args
from ehrhart import LatticePolytope, ehrhart_poly, tree_example
from fractions import Fraction
from hecke_zeta import check_difference_identity, check_functional_eq, \
    check_igusa_l0, check_igusa_ln, check_phi_delta, check_phi_ratio, \
    check_reflection, delta_poly, eigenvalue_poly, local_zeta, \
    satake_image_eval, tamagawa_check, zeta_C_commden, zeta_series_oracle
from lattices import enumerate_sublattices, enumerate_superlattices, \
    enumerate_symplectic_cosets, inverse_transpose
from qcombinat import check_psi_absorption, qidentity_check
from util import ComputationError, UsageError, dumps, frac_to_str, str_to_frac


def main(argv=None):
    try:
        args = get_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    except UsageError as e:
        print(f'error: {e}', file=sys.stderr)
        return 2

    # Set up logging
    save_dir = util.get_save_dir(args.save_dir, args.name, subdir=args.verb)
    log = util.get_logger(save_dir, args.name)
    log.info(f'Args: {dumps({k: _plain(v) for k, v in vars(args).items()})}')
    util.set_progress(args.progress)

    try:
        ok = VERBS[args.verb](args, log)
    except ComputationError as e:
        log.debug('computation failed', exc_info=True)
        print(f'{type(e).__name__}: {e}', file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return 2
    finally:
        util.set_progress(False)

    return 0 if ok is not False else 1


def _plain(v):
    return frac_to_str(v) if isinstance(v, Fraction) else v


def _out(obj, args, latex=None, text=None):
    """Print one result in the requested format."""
    if args.format == 'latex' and latex is not None:
        print(latex)
    elif args.format == 'text' and text is not None:
        print(text)
    else:
        print(dumps(obj))


def _require(value, flag):
    if value is None:
        raise UsageError(f'{flag} is required here')
    return value


def _polytope(path):
    return LatticePolytope.from_json(_require(path, '--polytope'))


def do_phi(args, log):
    first = 0 if args.type == 'C' else 1
    ks = range(first, args.n + 1) if args.k is None else [args.k]
    ok = True
    for k in ks:
        phi = eigenvalue_poly(args.type, args.n, k, args.ell)
        record = phi.to_json()
        if args.p is not None:
            record['value'] = frac_to_str(phi(args.p))
            if args.oracle and args.type == 'C':
                satake = satake_image_eval(args.n, k, args.ell, args.p, oracle=True)
                record['satake'] = frac_to_str(satake)
                ok &= satake == phi(args.p)
        _out(record, args, latex=phi.latex(), text=phi.poly.to_str())
    return ok


def do_delta(args, log):
    ks = range(args.n + 1) if args.k is None else [args.k]
    for k in ks:
        poly = delta_poly(args.n, k)
        _out({'n': args.n, 'k': k, 'poly': poly.to_json()}, args,
             latex=poly.latex(), text=poly.to_str())


def do_zeta(args, log):
    if args.commden:
        if args.type != 'C':
            raise UsageError('--commden applies to type C only')
        quotient = zeta_C_commden(args.n, args.ell)
        _out({'type': 'C', 'n': args.n, 'ell': args.ell,
              'numerator': quotient.numerator.to_json(),
              'factors': [[a, b] for a, b in quotient.factors]},
             args, latex=quotient.latex(), text=repr(quotient))
        return
    zeta = local_zeta(args.type, args.n, args.ell, method=args.method)
    _out(zeta.to_json(), args, latex=zeta.latex(), text=repr(zeta.quotient))


def do_expand(args, log):
    zeta = local_zeta(args.type, args.n, args.ell)
    record = {'type': args.type, 'n': args.n, 'ell': args.ell, 'order': args.order}
    if args.p is None:
        if args.oracle:
            raise UsageError('--oracle needs --p')
        record['series'] = zeta.expand(zeta.step * args.order).to_json()
        _out(record, args)
        return
    formula = zeta.series_at(args.p, args.order)
    record['p'] = args.p
    record['coefficients'] = [frac_to_str(c) for c in formula]
    ok = True
    if args.oracle:
        P = _polytope(args.polytope)
        oracle = zeta_series_oracle(args.type, args.n, args.ell, args.p, P, args.order)
        record['oracle'] = [frac_to_str(c) for c in oracle]
        ok = oracle == formula
        log.info(f'Series oracle {"agrees" if ok else "DISAGREES"} with the closed form')
    _out(record, args, text=' '.join(record['coefficients']))
    return ok


def _ells(args, lo, hi):
    return [args.ell] if args.ell is not None else list(range(lo, hi + 1))


def _suite_checks(args):
    """Yield (parameters, verdict, gating) for the chosen suite."""
    suite = args.suite
    for n in range(1, args.n + 1):
        if suite == 'functional-eq':
            for ell in _ells(args, 0, 2 * n):
                yield {'n': n, 'ell': ell}, check_functional_eq(n, ell), True
        elif suite == 'reflection':
            for ell in _ells(args, 0, 2 * n):
                yield {'n': n, 'ell': ell}, check_reflection(n, ell), True
        elif suite == 'igusa-l0':
            yield {'n': n}, check_igusa_l0(n), True
        elif suite == 'igusa-ln':
            # Evidence only: reported but never gating
            yield {'n': n}, check_igusa_ln(n), False
        elif suite == 'phi-ratio':
            for ell in _ells(args, 0, 2 * n):
                for k in range(n + 1):
                    yield {'type': 'C', 'n': n, 'k': k, 'ell': ell}, check_phi_ratio('C', n, k, ell), True
                for k in range(1, n):
                    yield {'type': 'A', 'n': n, 'k': k, 'ell': ell}, check_phi_ratio('A', n, k, ell), True
        elif suite == 'phi-delta':
            for k in range(n + 1):
                yield {'n': n, 'k': k}, check_phi_delta(n, k), True
        elif suite == 'satake':
            for ell in _ells(args, -1, 2 * n + 1):
                for k in range(n + 1):
                    value = satake_image_eval(n, k, ell, args.p, args.oracle)
                    params = {'n': n, 'k': k, 'ell': ell, 'p': args.p}
                    yield params, value == eigenvalue_poly('C', n, k, ell)(args.p), True
                for k in range(1, n + 1):
                    params = {'n': n, 'k': k, 'ell': ell, 'p': args.p, 'difference': True}
                    yield params, check_difference_identity(n, k, ell, args.p, args.oracle), True
        elif suite == 'tamagawa':
            yield {'n': n, 'p': args.p, 'order': args.order}, tamagawa_check(n, args.p, args.order), True
        elif suite == 'global-identity':
            if n > 2:
                break
            for ell in _ells(args, 0, 2 * n):
                for kind in ('A', 'C'):
                    params = {'type': kind, 'n': n, 'ell': ell, 'M': args.bound}
                    yield params, check_global_identity(kind, n, ell, args.bound), True
        elif suite == 'psi-absorption':
            yield {'n': n}, check_psi_absorption(n), True
    if suite == 'qidentity':
        for m in range(9):
            yield {'m': m}, qidentity_check(m), True


def do_verify(args, log):
    ok = True
    checks = 0
    for params, verdict, gating in _suite_checks(args):
        checks += 1
        print(dumps({'suite': args.suite, **params, 'ok': bool(verdict)}))
        if gating and not verdict:
            ok = False
    log.info(f'{args.suite}: {checks} checks, {"all passed" if ok else "FAILED"}')
    return ok


def do_enumerate(args, log):
    count = 0
    if args.what == 'sublattices':
        for rec in enumerate_sublattices(args.n, args.p, args.m, args.max_index):
            print(dumps(rec.to_json()))
            count += 1
    elif args.what == 'superlattices':
        for g in enumerate_superlattices(args.n, args.p ** args.m):
            lattice = [[frac_to_str(x) for x in row] for row in inverse_transpose(g)]
            print(dumps({'g': [list(r) for r in g], 'lattice': lattice}))
            count += 1
    else:
        for coset in enumerate_symplectic_cosets(args.n, args.p, args.m):
            print(dumps(coset.to_json()))
            count += 1
    log.info(f'Enumerated {count} {args.what}')


def do_ehrhart(args, log):
    P = _polytope(args.polytope)
    basis = None
    if args.lattice:
        basis = [[str_to_frac(x) for x in row] for row in json.loads(args.lattice)]
    poly = ehrhart_poly(P, basis, args.method if basis else 'transform')
    coeffs = poly.to_json()
    _out({'polytope': P.to_json(), 'coefficients': coeffs}, args,
         text=f'c = ({", ".join(coeffs)})')


def _parse_pairs(spec):
    try:
        return [tuple(int(x) for x in item.split(':')) for item in spec.split(',') if item]
    except ValueError as e:
        raise UsageError(f'bad --pairs value: {spec!r}') from e


def do_global(args, log):
    if args.pairs:
        P = LatticePolytope.from_json(args.polytope) if args.polytope else None
        pairs = _parse_pairs(args.pairs)
        ok = multiplicativity_check(args.type, args.n, args.ell, pairs, P)
        print(dumps({'type': args.type, 'n': args.n, 'ell': args.ell,
                     'pairs': [list(p) for p in pairs], 'multiplicative': ok}))
        return ok
    table = global_coeffs(args.type, args.n, args.ell, args.bound)
    record = table.to_json()
    record['support_ok'] = table.support_ok()
    _out(record, args, text=' '.join(record['coefficients']))
    return record['support_ok']


def do_asymptotics(args, log):
    report = asymptotic_constant(args.type, args.n, args.ell, args.precision, args.route)
    record = report.to_json()
    if args.probe:
        record['probe'] = partial_sum_probe(args.type, args.n, args.ell, args.probe,
                                            args.precision).to_json()
    text = (f'alpha = {record["abscissa"]}, pole order {report.pole_order}, '
            f'constant {report.expression} in {report.constant}')
    _out(record, args, text=text)


def do_tree_example(args, log):
    P = _polytope(args.polytope)
    example = tree_example(P, args.p, args.radius, args.ell)
    record = example.to_json()
    text = ' '.join(f'r={r}: {v}' for r, v in record['normalised'].items())
    _out(record, args, text=text)


VERBS = {
    'phi': do_phi,
    'delta': do_delta,
    'zeta': do_zeta,
    'expand': do_expand,
    'verify': do_verify,
    'enumerate': do_enumerate,
    'ehrhart': do_ehrhart,
    'global': do_global,
    'asymptotics': do_asymptotics,
    'tree-example': do_tree_example,
}


if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
