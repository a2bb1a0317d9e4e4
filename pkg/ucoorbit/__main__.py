#!/usr/bin/python3
"""Command line of the laboratory.

  python3 -m ucoorbit <experiment> [--config PATH] [--out DIR] [overrides]
  python3 -m ucoorbit all --config configs/

Exits 0 when every check of every run passed, 1 when a check failed and 2
when a config or an experiment was refused. Every config runs before the
exit status is decided.
"""
__author__ = 'µCoorbit developers'
__version__ = '0.1'

# Standard modules
import argparse
import logging
import sys

# Package modules
from . import __version__ as VERSION
from . import Error, Lab
from . import harness

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_REFUSED = 2


def Parser():
  parser = argparse.ArgumentParser(
      prog='ucoorbit', description='Smoothness norm and coorbit experiments.')
  parser.add_argument('--version', action='version', version=VERSION)
  commands = parser.add_subparsers(dest='experiment', required=True)
  for name in harness.EXPERIMENTS + ('all',):
    command = commands.add_parser(name)
    command.add_argument('--config', help='JSON config file or directory')
    command.add_argument('--out', help='report directory')
    command.add_argument('--dim', type=int, choices=(1, 2))
    for exponent in ('s', 'p', 'q', 'a'):
      command.add_argument('--' + exponent, type=float)
    command.add_argument('--variant', type=int)
    command.add_argument('--beta', type=float)
    command.add_argument('--alpha', type=float)
    command.add_argument('--order', type=int, help='spline order m')
    command.add_argument('--seed', type=int)
    command.add_argument('--format', choices=harness.FORMATS)
    command.add_argument('--settings', help='INI settings file')
    command.add_argument('--debug', action='store_true')
  return parser


def main(argv=None):
  args = Parser().parse_args(argv)
  logging.basicConfig(format='%(name)s %(levelname)s: %(message)s')
  lab = None
  try:
    lab = Lab(args.settings, debug=args.debug)
    configs = lab.Configs(
        args.experiment, args.config, dimension=args.dim, s=args.s, p=args.p,
        q=args.q, a=args.a, variant=args.variant, beta=args.beta,
        alpha=args.alpha, order=args.order, seed=args.seed, format=args.format,
        output=args.out)
    outcomes = lab.Execute(configs)
  except (Error, PermissionError) as error:
    print('ucoorbit: %s' % error, file=sys.stderr)
    return EXIT_REFUSED
  finally:
    if lab is not None:
      lab.Close()
  for result, paths in outcomes:
    failed = [check for check in result.checks if not check.passed]
    if result.refusal:
      state = 'REFUSED'
    else:
      state = 'passed' if not failed else '%d FAILED' % len(failed)
    print('%-24s %-16s %3d checks  %s' % (
        result.config.name, result.config.experiment, len(result.checks),
        state))
    if result.refusal:
      print('  %s' % result.refusal)
    for check in failed:
      print('  %r' % check)
    print('  reports: %s' % ', '.join(paths))
  if any(result.refusal for result, _paths in outcomes):
    return EXIT_REFUSED
  if all(result.passed for result, _paths in outcomes):
    return EXIT_PASSED
  return EXIT_FAILED


if __name__ == '__main__':
  sys.exit(main())
