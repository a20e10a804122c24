"""Tests of the command-line interface."""

import contextlib
import io
import json
import logging
import math
import pathlib
import tempfile
import typing as t
import unittest
import unittest.mock

from quad_modulus.main import main
from quad_modulus.report import Failure, Report, read_csv
from quad_modulus.sc_solver import LOG_GAP_LIMIT
from .test_setup import run_module

_LOG = logging.getLogger(__name__)

SQUARE_JSON = '{"a": [0, 0], "b": [1, 0], "c": [1, 1], "d": [0, 1]}'

RECTANGLE_JSON = '{"a": [2, 0], "b": [2, 1], "c": [0, 1], "d": [0, 0]}'


@contextlib.contextmanager
def temporarily_set_logger_level(logger_name: str, level: int):
    """Change logger level on enter and restore on exit of this context."""
    logger = logging.getLogger(logger_name)
    level_ = logger.level
    logger.setLevel(level)
    try:
        yield
    finally:
        logger.setLevel(level_)


def preserve_logger_level(logger_name: str):
    return temporarily_set_logger_level(logger_name, logging.getLogger(logger_name).level)


def run_main(*args: str) -> t.Tuple[int, str, str]:
    """Exit status, standard output and standard error of the command-line interface."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        with preserve_logger_level('quad_modulus'):
            status = main(list(args))
    _LOG.debug('%s -> %i, stderr: %s', args, status, stderr.getvalue())
    return status, stdout.getvalue(), stderr.getvalue()


class Tests(unittest.TestCase):

    def test_not_as_main(self):  # pylint: disable = no-self-use
        run_module('quad_modulus', run_name=None)

    def test_help(self):
        sio = io.StringIO()
        with contextlib.redirect_stdout(sio):
            with preserve_logger_level('quad_modulus'):
                with self.assertRaises(SystemExit) as context:
                    run_module('quad_modulus', '--help')
        self.assertEqual(context.exception.code, 0)
        self.assertIn('region-map', sio.getvalue())

    def test_bad_usage(self):
        for args in [(), ('modulus',), ('sweep', '--family', 'q3', '--params', '{}'),
                     ('verify', '--id', 'th9.9')]:
            with self.subTest(args=args):
                sio = io.StringIO()
                with contextlib.redirect_stderr(sio):
                    with preserve_logger_level('quad_modulus'):
                        with self.assertRaises(SystemExit) as context:
                            run_module('quad_modulus', *args)
                self.assertEqual(context.exception.code, 2)
                _LOG.info('%s', sio.getvalue())

    def test_modulus(self):
        status, stdout, _ = run_main('modulus', '--quad', SQUARE_JSON)
        self.assertEqual(status, 0)
        data = json.loads(stdout)
        self.assertEqual(set(data), {'value', 'err', 'method'})
        self.assertAlmostEqual(data['value'], 1.0, places=9)
        self.assertEqual(data['method'], 'sc')

    def test_modulus_fem(self):
        with tempfile.TemporaryDirectory() as folder:
            path = pathlib.Path(folder, 'mesh.json')
            status, stdout, _ = run_main('modulus', '--quad', RECTANGLE_JSON, '--method', 'fem',
                                         '--mesh-dump', str(path))
            self.assertTrue(path.is_file())
        self.assertEqual(status, 0)
        data = json.loads(stdout)
        self.assertEqual(data['method'], 'fem')
        self.assertAlmostEqual(data['value'], 2.0, places=6)

    def test_modulus_both(self):
        status, stdout, _ = run_main('modulus', '--quad', RECTANGLE_JSON, '--method', 'both')
        self.assertEqual(status, 0)
        data = json.loads(stdout)
        self.assertEqual(data['method'], 'both')
        self.assertLessEqual(data['bracket']['lower'], data['value'] + data['err'])
        self.assertLessEqual(data['value'] - data['err'], data['bracket']['upper'])
        self.assertEqual(data['sc']['method'], 'sc')

    def test_modulus_bad_input(self):
        cases = {
            '{"a": [0, 0], "b": [1, 0], "c": [1, 1]}': 'missing vertex d',
            '{"a": [0, 0], "b": [1, 0], "c": [1, 1], "d": [0, "1"]}': 'd: ',
            '{"a": [0, 0], "b": [0, 1], "c": [1, 1], "d": [1, 0]}': 'quad_modulus: error',
            '{"a": [0, 0], "b": [1, 0], "c": [1, 1], "d": [0, 1]': 'quad: not valid JSON'}
        for quad, message in cases.items():
            with self.subTest(quad=quad):
                status, stdout, stderr = run_main('modulus', '--quad', quad)
                self.assertEqual(status, 2)
                self.assertEqual(stdout, '')
                self.assertIn(message, stderr)

    def test_modulus_solver_failure(self):
        modulus = 2 * LOG_GAP_LIMIT / math.pi
        quad = json.dumps({'a': [modulus, 0], 'b': [modulus, 1], 'c': [0, 1], 'd': [0, 0]})
        status, _, stderr = run_main('modulus', '--quad', quad)
        self.assertEqual(status, 3)
        self.assertIn('NoBracket', stderr)

    def test_verify(self):
        status, stdout, _ = run_main('verify', '--id', 'th4.1', '--seed', '7', '--samples', '2')
        self.assertEqual(status, 0)
        data = json.loads(stdout)
        self.assertEqual(data['check_id'], 'th4.1')
        self.assertEqual(data['seed'], 7)
        self.assertEqual(data['failures'], [])

    def test_verify_exit_status(self):
        failed = Report('th3.1', 0, 1, failures=[Failure({'index': 0}, 1.0, 1.1, -0.1)])
        faulty = Report('th3.1', 0, 1, faults=[{'index': 0, 'error': 'NoBracket: ...'}])
        for report, expected in [(Report('th3.1', 0, 1, passes=1), 0), (failed, 1), (faulty, 3)]:
            with self.subTest(report=report):
                with unittest.mock.patch('quad_modulus.main.verify', return_value=report):
                    status, stdout, _ = run_main('verify', '--id', 'th3.1')
                self.assertEqual(status, expected)
                self.assertEqual(json.loads(stdout)['check_id'], 'th3.1')

    def test_verify_bad_config(self):
        status, _, stderr = run_main('verify', '--id', 'th4.1', '--samples', '0')
        self.assertEqual(status, 2)
        self.assertIn('samples=0', stderr)

    def test_sweep(self):
        with tempfile.TemporaryDirectory() as folder:
            path = pathlib.Path(folder, 'q1.csv')
            status, stdout, _ = run_main(
                'sweep', '--family', 'q1', '--params', '{"beta": 1.0, "gamma": 1.0}',
                '--grid', '3', '--out', str(path))
            header, rows = read_csv(path)
        self.assertEqual(status, 0)
        self.assertEqual(stdout, '')
        self.assertEqual(header, ['y', 'modulus', 'err'])
        self.assertEqual([_[0] for _ in rows], [-0.5, 0.0, 0.5])
        self.assertGreater(rows[0][1], rows[1][1])

    def test_sweep_to_stdout(self):
        status, stdout, _ = run_main('sweep', '--family', 'notch', '--params',
                                     '{"M": 2.0, "phi": 1.0}', '--grid', '2')
        self.assertEqual(status, 0)
        lines = stdout.splitlines()
        self.assertEqual(lines[0], 'h,modulus,err')
        self.assertEqual(len(lines), 3)

    def test_sweep_bad_params(self):
        for params, message in [('[1, 2]', 'params'), ('{"beta": 1.0}', 'gamma'),
                                ('{"beta": 1.0, "gamma": 2.0}', 'gamma'),
                                ('{"beta": "x", "gamma": 1.0}', 'quad_modulus: error')]:
            with self.subTest(params=params):
                status, _, stderr = run_main('sweep', '--family', 'q1', '--params', params)
                self.assertEqual(status, 2)
                self.assertIn(message, stderr)

    def test_region_map(self):
        with tempfile.TemporaryDirectory() as folder:
            path = pathlib.Path(folder, 'signs.csv')
            status, _, _ = run_main('region-map', '--quad', SQUARE_JSON, '--vertex', 'a',
                                    '--grid', '4', '--rho', '0.05', '--out', str(path))
            header, rows = read_csv(path)
        self.assertEqual(status, 0)
        self.assertEqual(header[-2:], ['sign', 'certain'])
        self.assertEqual([_[header.index('sign')] for _ in rows], [1.0, -1.0, -1.0, 1.0])

    def test_explore(self):
        status, stdout, _ = run_main('explore', '--problem', 'op65', '--samples', '2')
        self.assertEqual(status, 0)
        data = json.loads(stdout)
        self.assertEqual(data['check_id'], 'op65')
        self.assertIn('candidates', data)
