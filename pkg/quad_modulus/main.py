"""Command-line interface of quad_modulus package."""

import argparse
import json
import logging
import os
import pathlib
import sys
import typing as t

from ._version import VERSION
from .exceptions import InputError, SolverDisagreement
from .pde_oracle import DEFAULT_FEM_TOL, modulus_fem
from .quadrilateral import Quadrilateral, Vertex
from .report import DEFAULT_MARGIN, DEFAULT_SAMPLES, CheckConfig, write_csv
from .sc_solver import DEFAULT_TOL, Method, modulus_sc
from .verify import (
    CHECK_IDS, FAMILIES, PROBLEM_IDS, Evaluator, explore, region_map, sweep, verify, verify_all)

_LOG = logging.getLogger(__name__)


def _json_argument(field: str, text: str) -> t.Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(field, f'not valid JSON: {err}') from err


def _quadrilateral(text: str) -> Quadrilateral:
    return Quadrilateral.from_dict(_json_argument('quad', text))


def _print_json(data: t.Any) -> None:
    print(json.dumps(data, indent=2))


def _check_config(parsed_args: argparse.Namespace) -> CheckConfig:
    return CheckConfig(parsed_args.seed, parsed_args.samples, Method.from_str(parsed_args.method),
                       parsed_args.margin, parsed_args.workers)


def _run_modulus(parsed_args: argparse.Namespace) -> int:
    q = _quadrilateral(parsed_args.quad)
    method = Method.from_str(parsed_args.method)
    if parsed_args.mesh_dump is not None and method is Method.SC:
        _LOG.warning('no mesh is used by method %s, ignoring --mesh-dump', method.value)
    if method is Method.SC:
        _print_json(modulus_sc(q, parsed_args.tol or DEFAULT_TOL).to_dict())
        return 0
    fem = modulus_fem(q, parsed_args.tol or DEFAULT_FEM_TOL, mesh_dump=parsed_args.mesh_dump)
    if method is Method.FEM:
        _print_json(fem.to_dict())
        return 0
    sc = modulus_sc(q)
    bracket = fem.bracket
    if not bracket.lower - sc.err <= sc.value <= bracket.upper + sc.err:
        raise SolverDisagreement(f'modulus {sc.value} of {q!r} is outside of {bracket!r}')
    _print_json({'value': sc.value, 'err': sc.err, 'method': method.value,
                 'sc': sc.to_dict(), 'fem': fem.to_dict(), 'bracket': bracket.to_dict()})
    return 0


def _run_verify(parsed_args: argparse.Namespace) -> int:
    cfg = _check_config(parsed_args)
    if parsed_args.id == 'all':
        reports = verify_all(cfg)
        _print_json([_.to_dict() for _ in reports])
    else:
        reports = [verify(parsed_args.id, cfg)]
        print(reports[0].to_json())
    if any(_.failures for _ in reports):
        return 1
    if any(_.faults for _ in reports):
        return 3
    return 0


def _run_sweep(parsed_args: argparse.Namespace) -> int:
    params = _json_argument('params', parsed_args.params)
    if not isinstance(params, dict):
        raise InputError('params', f'expected an object, got {params!r}')
    table = sweep(parsed_args.family, params, parsed_args.grid,
                  Evaluator(Method.from_str(parsed_args.method)))
    text = write_csv(table.header, table.tuples(), parsed_args.out)
    if parsed_args.out is None:
        print(text, end='')
    return 0


def _run_region_map(parsed_args: argparse.Namespace) -> int:
    q = _quadrilateral(parsed_args.quad)
    grid = region_map(q, Vertex.from_str(parsed_args.vertex), parsed_args.grid, parsed_args.rho,
                      margin=parsed_args.margin,
                      evaluate=Evaluator(Method.from_str(parsed_args.method)))
    text = write_csv(grid.header, grid.rows(), parsed_args.out)
    if parsed_args.out is None:
        print(text, end='')
    return 0


def _run_explore(parsed_args: argparse.Namespace) -> int:
    print(explore(parsed_args.problem, _check_config(parsed_args)).to_json())
    return 0


def _add_sampling_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--seed', type=int, default=0, help='seed of all random draws')
    parser.add_argument('--samples', type=int, default=DEFAULT_SAMPLES,
                        help='number of sampled configurations')
    parser.add_argument('--margin', type=float, default=DEFAULT_MARGIN, help='''multiplier of the
                        combined error budget that a margin must exceed''')
    parser.add_argument('--workers', type=int, default=1,
                        help='number of threads evaluating samples')


def _add_method_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--method', choices=[_.value for _ in Method], default=Method.SC.value,
                        help='numerical method of the moduli')


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='quad_modulus',
        description='''Conformal modulus of polygonal quadrilaterals and numerical verification
        of its monotonicity and convexity properties. Use LOGGING_LEVEL environment variable to
        adjust logging level.''',
        epilog='''Quadrilaterals are given as JSON objects {"a": [x, y], "b": ..., "c": ...,
        "d": ...} with vertices in counterclockwise order.''',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('--version', action='version',
                        version=f'{parser.prog} {VERSION},\nPython {sys.version}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    modulus = subparsers.add_parser(
        'modulus', help='compute the modulus of a quadrilateral',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    modulus.add_argument('--quad', required=True, help='quadrilateral as JSON')
    _add_method_argument(modulus)
    modulus.add_argument('--tol', type=float, help=f'''target accuracy, by default {DEFAULT_TOL}
                         for sc and {DEFAULT_FEM_TOL} for fem''')
    modulus.add_argument('--mesh-dump', type=pathlib.Path,
                         help='write the finest finite-element mesh to this JSON file')
    modulus.set_defaults(run=_run_modulus)

    check = subparsers.add_parser(
        'verify', help='verify a modulus inequality on seeded samples',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    check.add_argument('--id', required=True, choices=CHECK_IDS + ('all',))
    _add_sampling_arguments(check)
    _add_method_argument(check)
    check.set_defaults(run=_run_verify)

    family = subparsers.add_parser(
        'sweep', help='modulus along the parameter grid of a family',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    family.add_argument('--family', required=True, choices=tuple(FAMILIES))
    family.add_argument('--params', required=True, help='family parameters as JSON object')
    family.add_argument('--grid', type=int, default=11, help='number of grid points')
    family.add_argument('--out', type=pathlib.Path, help='CSV file, standard output by default')
    _add_method_argument(family)
    family.set_defaults(run=_run_sweep)

    region = subparsers.add_parser(
        'region-map', help='sign of the modulus change around a vertex',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    region.add_argument('--quad', required=True, help='quadrilateral as JSON')
    region.add_argument('--vertex', required=True, choices=[str(_) for _ in Vertex])
    region.add_argument('--grid', type=int, default=8, help='number of probe directions')
    region.add_argument('--rho', type=float, default=0.05, help='probe radius')
    region.add_argument('--margin', type=float, default=DEFAULT_MARGIN,
                        help='multiplier of the error budget for certain signs')
    region.add_argument('--out', type=pathlib.Path, help='CSV file, standard output by default')
    _add_method_argument(region)
    region.set_defaults(run=_run_region_map)

    problem = subparsers.add_parser(
        'explore', help='sample an open problem',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    problem.add_argument('--problem', required=True, choices=PROBLEM_IDS)
    _add_sampling_arguments(problem)
    _add_method_argument(problem)
    problem.set_defaults(run=_run_explore)
    return parser


def main(args=None, namespace=None) -> int:
    """Run the command-line interface and return its exit status.

    Malformed input exits with 2, failed verification with 1 and numerical failures with 3.
    """
    logging_level = getattr(logging, os.environ.get('LOGGING_LEVEL', 'warning').upper())
    logging.basicConfig(level=min(logging_level, logging.WARNING))
    logging.getLogger().setLevel(logging.WARNING)
    logging.getLogger('quad_modulus').setLevel(logging_level)
    parsed_args = _parser().parse_args(args=args, namespace=namespace)
    try:
        return parsed_args.run(parsed_args)
    except (ValueError, KeyError, TypeError) as err:
        print(f'quad_modulus: error: {err}', file=sys.stderr)
        return 2
    except ArithmeticError as err:
        print(f'quad_modulus: solver failure: {type(err).__name__}: {err}', file=sys.stderr)
        return 3
