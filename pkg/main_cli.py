"""
Main entry point for CLI application
Superoptimal continued fraction expansions, checks and statistics
"""
import argparse
import sys

from superoptimalCF.cli import FORMATS, CommandConfig, main as run_cli
from superoptimalCF.config.settings import Settings


def _add_input(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--surd', help='quadratic irrational in (0,1), e.g. "sqrt(2)-1"')
    group.add_argument('--decimal', help='decimal string in (0,1), e.g. 0.14159265358979')
    group.add_argument('--decimal-file', help='file holding a decimal string')
    group.add_argument('--fixture', help='bundled decimal fixture (pi = digits of pi - 3)')
    group.add_argument('--digits', help='comma separated RCF digits a_1,a_2,...')
    parser.add_argument(
        '--guard',
        type=int,
        default=0,
        help='trailing decimal digits to distrust (default: 0)'
    )


def _add_format(parser, default='jsonl'):
    parser.add_argument(
        '--format',
        choices=FORMATS,
        default=default,
        help=f'output format (default: {default})'
    )


def build_parser():
    """Argument parser with one subparser per command"""
    parser = argparse.ArgumentParser(
        description='Superoptimal continued fractions by induced natural extensions',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # RCF digits and convergents
  python main_cli.py expand --surd "sqrt(2)-1" -n 5

  # jump(2) expansion of pi - 3 from the bundled fixture
  python main_cli.py socf --fixture pi --region "jump(2)" -k 11 --format pretty

  # Hurwitz expansion, cross-checked against block continuants
  python main_cli.py socf --fixture pi --region hurwitz -k 11 --oracle

  # Exact superoptimality check
  python main_cli.py verify superoptimal --region hurwitz --eps "1/sqrt(5)" --fixture pi -k 10

  # Seeded statistics over 4 worker processes
  python main_cli.py stats --region "jump(2)" --samples 50 --len 10000 --seed 7 --workers 4

  # Measure and entropy of a region
  python main_cli.py measure --region "legendre(2/5)"

Exit codes:
  0 pass, 1 other error, 2 parse error, 3 precision exhausted,
  4 source exhausted or undecidable, 5 orbit never hits region, 6 property violated
        """
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    expand = subparsers.add_parser('expand', help='RCF digits and convergents')
    _add_input(expand)
    expand.add_argument('-n', type=int, default=10, help='number of digits (default: 10)')
    _add_format(expand)

    socf = subparsers.add_parser('socf', help='superoptimal expansion for a region')
    _add_input(socf)
    socf.add_argument('--region', required=True, help='jump(b), legendre(eps), hurwitz, omega or a cells[...] literal')
    socf.add_argument('-k', type=int, default=10, help='number of SOCF digits (default: 10)')
    socf.add_argument('--cap', type=int, default=None,
                      help=f'max natural-extension steps per hit (default: {Settings.DEFAULT_CAP})')
    socf.add_argument('--oracle', action='store_true', help='cross-check digits against block continuants')
    _add_format(socf)

    verify = subparsers.add_parser('verify', help='superoptimal, legendre or borel check')
    verify.add_argument('check', choices=('superoptimal', 'legendre', 'borel'))
    _add_input(verify)
    verify.add_argument('--region', help='region for the superoptimal check')
    verify.add_argument('--eps', help='threshold eps (surd expression)')
    verify.add_argument('--C', type=float, default=None, help='speed constant (default: 1/measure)')
    verify.add_argument('-k', type=int, default=10, help='convergents to check (default: 10)')
    verify.add_argument('-n', type=int, default=50, help='Θ_n count for the borel check (default: 50)')
    verify.add_argument('--cap', type=int, default=None, help='max natural-extension steps per hit')
    _add_format(verify)

    stats = subparsers.add_parser('stats', help='seeded equidistribution and Lévy statistics')
    stats.add_argument('--region', required=True)
    stats.add_argument('--samples', type=int, default=50, help='number of orbits (default: 50)')
    stats.add_argument('--len', dest='orbit_len', type=int, default=10_000, help='orbit length (default: 10000)')
    stats.add_argument('--seed', type=int, default=0, help='random seed (default: 0)')
    stats.add_argument(
        '--workers',
        '-w',
        type=int,
        default=Settings.MAX_WORKERS,
        help=f'worker processes (default: {Settings.MAX_WORKERS}, max: {Settings.MAX_WORKERS_LIMIT})'
    )
    _add_format(stats)

    measure = subparsers.add_parser('measure', help='Gauss measure and entropy of a region')
    measure.add_argument('--region', required=True)
    measure.add_argument('--bounds', type=int, default=None, metavar='DEPTH',
                         help='also compute rigorous dyadic bounds to this depth')
    _add_format(measure)
    return parser


def config_from_args(args) -> CommandConfig:
    """Turn parsed arguments into a CommandConfig"""
    kind = value = None
    for name in ('surd', 'decimal', 'decimal_file', 'fixture', 'digits'):
        if getattr(args, name, None) is not None:
            kind, value = name, getattr(args, name)
    return CommandConfig(
        command=args.command,
        input_kind=kind,
        input_value=value,
        guard=getattr(args, 'guard', 0),
        region=getattr(args, 'region', None),
        K=getattr(args, 'k', 10),
        N=getattr(args, 'n', 10),
        cap=getattr(args, 'cap', None),
        check=getattr(args, 'check', None),
        epsilon=getattr(args, 'eps', None),
        C=getattr(args, 'C', None),
        seed=getattr(args, 'seed', 0),
        samples=getattr(args, 'samples', 50),
        orbit_len=getattr(args, 'orbit_len', 10_000),
        workers=getattr(args, 'workers', None),
        oracle=getattr(args, 'oracle', False),
        bounds_depth=getattr(args, 'bounds', None),
        output_format=args.format,
    )


def main(argv=None):
    """Parse arguments and launch CLI processor"""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Validate workers
    workers = getattr(args, 'workers', None)
    if workers is not None and workers < 1:
        print("Error: Workers must be >= 1", file=sys.stderr)
        return 2

    return run_cli(config_from_args(args))


if __name__ == '__main__':
    sys.exit(main())
