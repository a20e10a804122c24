"""Tests of seeded verification, sweeps and region maps."""

import logging
import math
import os
import unittest

from quad_modulus.exceptions import InvalidConfig, OutOfRange, UnknownCheck, UnknownFamily
from quad_modulus.quadrilateral import Quadrilateral, Vertex
from quad_modulus.report import CheckConfig, Outcome
from quad_modulus.sc_solver import Method, ModulusEstimate
from quad_modulus.verify import (
    CHECK_IDS, FAMILIES, PROBLEM_IDS, Comparison, Evaluator, explore, region_map, slope_2_3,
    sweep, verify)
from .examples import KNOWN_MODULUS_CASES, UNIT_SQUARE

_LOG = logging.getLogger(__name__)

CHEAP_CHECK_IDS = ('th2.1', 'cor2', 'th3.1', 'th4.1', 'remark2', 'cor5.2', 'q6.1')

SLOPE_CASES = [(1.0, math.pi / 4, 0.0), (1.0, math.pi / 2, 0.5),
               (2.0, math.pi / 3, (2 * math.sqrt(3) - 1) / 4)]
"""Modulus, direction and first-order change of a rectangle whose corner at 0 moves inward."""


class Tests(unittest.TestCase):

    def test_comparison(self):
        cases = [
            (Comparison(1.0, 0.9, 0.01), Outcome.Pass),
            (Comparison(1.0, 0.99, 0.01), Outcome.Inconclusive),
            (Comparison(0.9, 1.0, 0.01), Outcome.Fail),
            (Comparison(1.0, 0.99, 0.01, strict=False), Outcome.Pass),
            (Comparison(0.99, 1.0, 0.01, strict=False), Outcome.Pass),
            (Comparison(1.0, 0.98, 0.01, certified=True), Outcome.Pass),
            (Comparison(0.98, 1.0, 0.01, certified=True), Outcome.Fail)]
        for comparison, outcome in cases:
            with self.subTest(comparison=comparison):
                self.assertIs(comparison.outcome(3.0), outcome)
        comparison = Comparison.of(ModulusEstimate(1.2, Method.SC, 1e-9),
                                   ModulusEstimate(1.0, Method.SC, 2e-9), label='x')
        self.assertAlmostEqual(comparison.margin, 0.2)
        self.assertAlmostEqual(comparison.budget, 3e-9)
        self.assertEqual(comparison.label, 'x')

    def test_evaluator(self):
        evaluate = Evaluator()
        self.assertIs(evaluate(UNIT_SQUARE), evaluate(UNIT_SQUARE))
        self.assertAlmostEqual(evaluate(UNIT_SQUARE).value, 1.0)
        kite, modulus = KNOWN_MODULUS_CASES['kite']
        both = Evaluator(Method.Both, levels=3)(kite)
        self.assertIs(both.method, Method.Both)
        self.assertIsNotNone(both.bracket)
        self.assertAlmostEqual(both.value, modulus)
        fem = Evaluator(Method.FEM, levels=2)(kite)
        self.assertIs(fem.method, Method.FEM)
        self.assertAlmostEqual(fem.value, modulus, delta=fem.err + 1e-12)

    def test_unknown_ids(self):
        self.assertEqual(len(CHECK_IDS), 14)
        self.assertEqual(PROBLEM_IDS, ('op63a', 'op63b', 'op65'))
        with self.assertRaises(UnknownCheck):
            verify('nope')
        with self.assertRaises(UnknownCheck):
            explore('op64')
        with self.assertRaises(KeyError):
            explore('th3.1')

    def test_verify_cheap_checks(self):
        for check_id in CHEAP_CHECK_IDS:
            with self.subTest(check_id=check_id):
                report = verify(check_id, CheckConfig(seed=1, samples=3))
                _LOG.debug('%s: %s', check_id, report.summary)
                self.assertEqual(report.check_id, check_id)
                self.assertTrue(report.ok, report.to_json())
                self.assertEqual(report.passes + report.inconclusive + len(report.skipped), 3)

    def test_verify_straight_angle_at_d(self):
        # phi = 0 puts a, d and c on one line
        report = verify('cor2', CheckConfig(seed=1, samples=5))
        self.assertEqual(report.faults, [], report.to_json())
        self.assertTrue(report.ok, report.to_json())
        self.assertGreater(report.passes, 0)

    def test_verify_reflection_of_symmetric_q1(self):
        report = verify('th5.3', CheckConfig(seed=7, samples=4))
        self.assertTrue(report.ok, report.to_json())
        self.assertEqual(report.inconclusive, 0, report.to_json())

    def test_verify_is_deterministic(self):
        first = verify('th4.1', CheckConfig(seed=7, samples=4))
        second = verify('th4.1', CheckConfig(seed=7, samples=4, workers=2))
        self.assertEqual(first.to_dict(include_runtime=False),
                         second.to_dict(include_runtime=False))
        other = verify('th4.1', CheckConfig(seed=8, samples=4))
        self.assertNotEqual(first.worst_margin, other.worst_margin)

    def test_explore(self):
        for problem in PROBLEM_IDS:
            with self.subTest(problem=problem):
                report = explore(problem, CheckConfig(seed=3, samples=4))
                _LOG.debug('%s: %s', problem, report.summary)
                self.assertTrue(report.exploratory)
                self.assertFalse(report.faults)
                counted = report.passes + report.inconclusive + len(report.failures) \
                    + len(report.skipped)
                self.assertEqual(counted, 4)
                data = report.to_dict()
                self.assertIn('supported', data)
                self.assertIn('candidates', data)

    def test_slope_2_3(self):
        for modulus, phi, slope in SLOPE_CASES:
            with self.subTest(modulus=modulus, phi=phi):
                estimate, err = slope_2_3(modulus, phi)
                _LOG.debug('slope %.6f +- %.2g, expected %.6f', estimate, err, slope)
                self.assertAlmostEqual(estimate, slope, delta=1e-2)
                self.assertGreaterEqual(err, 0.0)

    def test_slope_2_3_bad(self):
        for h_seq in [(0.02, 0.01), (0.01, 0.02, 0.04), (0.04, 0.02, 0.0)]:
            with self.subTest(h_seq=h_seq):
                with self.assertRaises(OutOfRange):
                    slope_2_3(1.0, math.pi / 4, h_seq)

    def test_region_map_unit_square(self):
        angles = [0, math.pi / 2, math.pi, 3 * math.pi / 2]
        grid = region_map(UNIT_SQUARE, 'a', rho=0.05, angles=angles)
        self.assertEqual(grid.vertex, 'a')
        self.assertAlmostEqual(grid.base_modulus, 1.0)
        self.assertEqual([_.sign for _ in grid.probes], [1, -1, -1, 1])
        self.assertTrue(all(_.certain for _ in grid.probes))

    def test_region_map_rectangle_corner(self):
        # the sign changes where tan(phi) = 1 / M
        rectangle = Quadrilateral(2, 2 + 1j, 1j, 0)
        grid = region_map(rectangle, Vertex.D, rho=0.02, angles=[0.1, 1.4])
        self.assertEqual([_.sign for _ in grid.probes], [-1, 1])
        self.assertEqual(len(grid.rows()), 2)
        self.assertEqual(len(region_map(rectangle, 'd', grid=3, rho=0.02).probes), 3)

    def test_region_map_bad(self):
        with self.assertRaises(OutOfRange):
            region_map(UNIT_SQUARE, 'a', rho=0.0)
        with self.assertRaises(OutOfRange):
            region_map(UNIT_SQUARE, 'a', rho=2.0)
        with self.assertRaises(OutOfRange):
            region_map(UNIT_SQUARE, 'a', grid=0)
        with self.assertRaises(ValueError):
            region_map(UNIT_SQUARE, 'e')

    def test_sweep(self):
        table = sweep('q1', {'beta': 1.0, 'gamma': 0.5}, grid=5)
        self.assertEqual(table.header, ('y', 'modulus', 'err'))
        self.assertEqual([_.parameter for _ in table.rows], [-0.25, 0.0, 0.25, 0.5, 0.75])
        values = table.values()
        # decreasing on (-gamma, 0) and larger than at the reflected parameter
        self.assertGreater(values[0], values[1])
        self.assertGreater(values[0], values[2])
        # gamma = beta makes q1(y) and q1(-y) mirror images
        symmetric = sweep('q1', {'beta': 1.0, 'gamma': 1.0}, grid=5).values()
        self.assertAlmostEqual(symmetric[1], symmetric[3], places=7)
        rising = sweep('cor2', {'r': 0.5, 'b': [1, 2]}, grid=3).values()
        self.assertLess(rising[0], rising[1])
        self.assertLess(rising[1], rising[2])
        notch = sweep('notch', {'M': 2.0, 'phi': 1.0}, grid=3)
        self.assertEqual([_.parameter for _ in notch.rows], [0.0, 0.125, 0.25])
        self.assertAlmostEqual(notch.values()[0], 2.0)

    def test_sweep_families(self):
        params = {
            'qlambda': {'alpha': 0.2, 'beta': 1.5, 'gamma': 2.0, 'delta': 0.5},
            'q1': {'beta': 1.0, 'gamma': 0.6},
            'q2': {'phi': math.pi / 4, 'r1': 1.5, 'r2': 2.0},
            'g': {'h': 1.0, 'k': 0.5},
            'cor2': {'r': 0.5, 'b': [-0.5, 1.0]},
            'notch': {'M': 1.0, 'phi': math.pi / 2},
            'cor5.2': {'alpha': 0.2, 'gamma': 2.0, 'delta': 0.5},
            'prop1': {'apex': [0.5, 1.0]}}
        self.assertEqual(set(params), set(FAMILIES))
        for family, family_params in params.items():
            with self.subTest(family=family):
                table = sweep(family, family_params, grid=3)
                self.assertEqual(table.parameter_name, FAMILIES[family].parameter_name)
                self.assertTrue(all(_ > 0 for _ in table.values()))

    def test_sweep_bad(self):
        with self.assertRaises(UnknownFamily):
            sweep('q3', {})
        with self.assertRaises(OutOfRange):
            sweep('q1', {'beta': 1.0, 'gamma': 1.0}, grid=1)
        with self.assertRaises(InvalidConfig):
            sweep('q1', {'beta': 1.0})


@unittest.skipUnless(os.environ.get('TEST_ACCEPTANCE'), 'skipping long-running checks')
class AcceptanceTests(unittest.TestCase):

    def test_verify_all(self):
        for check_id in CHECK_IDS:
            with self.subTest(check_id=check_id):
                report = verify(check_id, CheckConfig(seed=0, samples=20))
                _LOG.info('%s: %s', check_id, report.summary)
                self.assertTrue(report.ok, report.to_json())

    def test_prop2_with_both_methods(self):
        report = verify('prop2', CheckConfig(seed=2, samples=5, method=Method.Both))
        self.assertTrue(report.ok, report.to_json())
        self.assertEqual(report.failures, [])
