"""Command-line arguments for run.py, one builder per verb."""

import argparse
import sys

from util import UsageError, load_config, str_to_frac


def _bool(s):
    return str(s).lower().startswith('t')


def get_args(argv=None):
    """Parse `argv` into a namespace; --config values fill flags not given."""
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = argparse.ArgumentParser('Ehrhart coefficients as symplectic Hecke eigenfunctions')
    sub = parser.add_subparsers(dest='verb', metavar='verb')
    sub.required = True
    builders = {
        'phi': get_phi_args,
        'delta': get_delta_args,
        'zeta': get_zeta_args,
        'expand': get_expand_args,
        'verify': get_verify_args,
        'enumerate': get_enumerate_args,
        'ehrhart': get_ehrhart_args,
        'global': get_global_args,
        'asymptotics': get_asymptotics_args,
        'tree-example': get_tree_example_args,
    }
    verb_parsers = {}
    for verb, build in builders.items():
        verb_parsers[verb] = sub.add_parser(verb)
        add_common_args(verb_parsers[verb])
        build(verb_parsers[verb])

    args = parser.parse_args(argv)
    if args.config:
        apply_config(args, verb_parsers[args.verb], argv)

    return args


def apply_config(args, parser, argv):
    """Fill unset flags from a key = value file.

    Raises:
        UsageError: On a key that is not a flag of this verb.
    """
    actions = {a.dest: a for a in parser._actions if a.option_strings}
    given = set()
    for a in actions.values():
        for opt in a.option_strings:
            if any(tok == opt or tok.startswith(opt + '=') for tok in argv):
                given.add(a.dest)
    for key, value in load_config(args.config).items():
        if key not in actions or key in ('config', 'help'):
            raise UsageError(f'unknown configuration key: {key}')
        if key in given:
            continue
        action = actions[key]
        if action.type is not None:
            try:
                value = action.type(str(value))
            except (TypeError, ValueError) as e:
                raise UsageError(f'bad value for {key}: {value!r}') from e
        if action.choices is not None and value not in action.choices:
            raise UsageError(f'{key} must be one of {sorted(action.choices)}')
        setattr(args, key, value)


def get_phi_args(parser):
    """Eigenvalue polynomials Φ^A / Φ^C."""
    add_type_arg(parser)
    add_rank_args(parser)
    parser.add_argument('--k',
                        type=int,
                        default=None,
                        help='Generator index; all k when omitted.')
    parser.add_argument('--p',
                        type=int,
                        default=None,
                        help='Also evaluate at Y = p and, with --oracle, '
                             'compare with the Satake image.')
    parser.add_argument('--oracle',
                        type=_bool,
                        default=False,
                        help='Cross-check by lattice enumeration.')


def get_delta_args(parser):
    """Coset-count polynomials Δ_{n,k}."""
    parser.add_argument('--n',
                        type=int,
                        default=1,
                        help='Rank.')
    parser.add_argument('--k',
                        type=int,
                        default=None,
                        help='Generator index; all k when omitted.')


def get_zeta_args(parser):
    """Closed-form local zeta functions."""
    add_type_arg(parser)
    add_rank_args(parser)
    parser.add_argument('--method',
                        type=str,
                        default='theta',
                        choices=('theta', 'direct'),
                        help='Assembly of the type C sum.')
    parser.add_argument('--commden',
                        type=_bool,
                        default=False,
                        help='Print the unreduced common-denominator form.')


def get_expand_args(parser):
    """Series expansion of a local zeta function."""
    add_type_arg(parser)
    add_rank_args(parser)
    parser.add_argument('--order',
                        type=int,
                        default=3,
                        help='Number of terms, counted in steps of t^n for type C.')
    parser.add_argument('--p',
                        type=int,
                        default=None,
                        help='Evaluate the coefficients at q = p.')
    parser.add_argument('--oracle',
                        type=_bool,
                        default=False,
                        help='Compare with averages over enumerated lattices (needs --p and --polytope).')
    parser.add_argument('--polytope',
                        type=str,
                        default=None,
                        help='Polytope JSON for the oracle.')


def get_verify_args(parser):
    """Exact identity suites; exit 1 if any check fails."""
    parser.add_argument('--suite',
                        type=str,
                        default='functional-eq',
                        choices=('functional-eq', 'reflection', 'igusa-l0', 'igusa-ln',
                                 'phi-ratio', 'phi-delta', 'satake', 'tamagawa',
                                 'global-identity', 'qidentity', 'psi-absorption'),
                        help='Identity to check.')
    parser.add_argument('--n',
                        type=int,
                        default=2,
                        help='Rank (largest rank for suites that sweep).')
    parser.add_argument('--ell',
                        type=int,
                        default=None,
                        help='Ehrhart index; the suite range when omitted.')
    parser.add_argument('--p',
                        type=int,
                        default=2,
                        help='Prime for numeric suites.')
    parser.add_argument('--order',
                        type=int,
                        default=3,
                        help='Series order for the Tamagawa suite.')
    parser.add_argument('--bound',
                        type=int,
                        default=1000,
                        help='Coefficient range for the global identity.')
    parser.add_argument('--oracle',
                        type=_bool,
                        default=False,
                        help='Use lattice enumeration where the suite has an oracle.')


def get_enumerate_args(parser):
    """Sublattices, superlattices and symplectic cosets as JSON lines."""
    parser.add_argument('--what',
                        type=str,
                        default='sublattices',
                        choices=('sublattices', 'superlattices', 'symplectic'),
                        help='Kind of object to enumerate.')
    parser.add_argument('--n',
                        type=int,
                        default=2,
                        help='Rank (half the dimension for symplectic cosets).')
    parser.add_argument('--p',
                        type=int,
                        default=2,
                        help='Prime.')
    parser.add_argument('--m',
                        type=int,
                        default=1,
                        help='Exponent: index p^m, or similitude p^m.')
    parser.add_argument('--max_index', '--max-index',
                        dest='max_index',
                        type=int,
                        default=None,
                        help='Only sublattices containing p^max_index * Z^n.')


def get_ehrhart_args(parser):
    """Ehrhart polynomial of a polytope in Z^n or a given lattice."""
    parser.add_argument('--polytope',
                        type=str,
                        required=True,
                        help='Polytope JSON: {"ambient": n, "vertices": [...]}.')
    parser.add_argument('--lattice',
                        type=str,
                        default=None,
                        help='JSON list of basis rows; Z^n when omitted.')
    parser.add_argument('--method',
                        type=str,
                        default='transform',
                        choices=('transform', 'cosets'),
                        help='Point counting in a lattice.')


def get_global_args(parser):
    """Dirichlet coefficients of the global zeta function."""
    add_type_arg(parser)
    add_rank_args(parser)
    parser.add_argument('--bound',
                        type=int,
                        default=100,
                        help='Largest m.')
    parser.add_argument('--pairs',
                        type=str,
                        default=None,
                        help='Coprime pairs "a:b,c:d" for a multiplicativity check.')
    parser.add_argument('--polytope',
                        type=str,
                        default=None,
                        help='With --pairs, check by enumeration on this polytope.')


def get_asymptotics_args(parser):
    """Abscissa, pole order and asymptotic constant."""
    add_type_arg(parser)
    add_rank_args(parser)
    parser.add_argument('--precision',
                        type=str_to_frac,
                        default=str_to_frac('1/1000000'),
                        help='Width of the certified interval.')
    parser.add_argument('--route',
                        type=str,
                        default='auto',
                        choices=('auto', 'zeta-quotient', 'gamma'),
                        help='Route to the type C constant.')
    parser.add_argument('--probe',
                        type=int,
                        default=None,
                        help='Also compare the partial sum up to this N.')


def get_tree_example_args(parser):
    """η_P on the Bruhat-Tits tree of PGL_2(Q_p)."""
    parser.add_argument('--polytope',
                        type=str,
                        default='./data/quad.json',
                        help='Polygon JSON.')
    parser.add_argument('--p',
                        type=int,
                        default=2,
                        help='Prime.')
    parser.add_argument('--radius',
                        type=int,
                        default=2,
                        help='Largest distance from the standard vertex.')
    parser.add_argument('--ell',
                        type=int,
                        default=1,
                        help='Ehrhart index.')


def add_type_arg(parser):
    parser.add_argument('--type',
                        type=str,
                        default='C',
                        choices=('A', 'C'),
                        help='Hecke type.')


def add_rank_args(parser):
    parser.add_argument('--n',
                        type=int,
                        default=1,
                        help='Rank.')
    parser.add_argument('--ell',
                        type=int,
                        default=0,
                        help='Ehrhart index.')


def add_common_args(parser):
    """Add arguments common to all verbs."""
    parser.add_argument('--save_dir',
                        type=str,
                        default='./save/',
                        help='Base directory for logs.')
    parser.add_argument('--name',
                        type=str,
                        default='run',
                        help='Name to identify the run. Need not be unique.')
    parser.add_argument('--config',
                        type=str,
                        default=None,
                        help='key = value file; flags given on the command line win.')
    parser.add_argument('--progress',
                        type=_bool,
                        default=False,
                        help='Show progress bars on stderr.')
    parser.add_argument('--format',
                        type=str,
                        default='json',
                        choices=('json', 'latex', 'text'),
                        help='Output format.')
