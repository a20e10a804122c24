"""Tests of elliptic integrals, cross-ratios and quadrature rules."""

import logging
import math
import unittest

import hypothesis
import hypothesis.strategies as st
import numpy as np
import scipy.special

from quad_modulus.exceptions import Degenerate, OutOfRange
from quad_modulus.special_functions import (
    INFINITY, EllipticParam, agm, cross_ratio, ell_K, gauss_jacobi_rule, modulus_from_crossratio,
    modulus_from_crossratio_excess)
from .examples import CROSS_RATIO_CASES

_LOG = logging.getLogger(__name__)


class Tests(unittest.TestCase):

    def test_agm(self):
        self.assertAlmostEqual(agm(1, math.sqrt(2)), 1.1981402347355922, places=15)
        self.assertEqual(agm(2.0, 2.0), 2.0)
        for x, y in [(0, 1), (1, -1)]:
            with self.subTest(x=x, y=y):
                with self.assertRaises(OutOfRange):
                    agm(x, y)

    def test_ell_K(self):
        self.assertAlmostEqual(ell_K(0), math.pi / 2, places=15)
        self.assertAlmostEqual(ell_K(1 / math.sqrt(2)), 1.8540746773013719, places=14)
        for k in (0.1, 0.5, 0.9, 0.999):
            with self.subTest(k=k):
                self.assertAlmostEqual(ell_K(k), scipy.special.ellipk(k ** 2), places=12)
        with self.assertRaises(OutOfRange):
            ell_K(1.0)
        with self.assertRaises(OutOfRange):
            ell_K(0.5, kprime=0.0)

    def test_ell_K_near_one(self):
        kprime = 1e-10
        # K(k) ~ log(4 / k') for k' -> 0
        self.assertAlmostEqual(ell_K(math.sqrt(1 - kprime ** 2), kprime), math.log(4 / kprime),
                               places=8)

    def test_elliptic_param(self):
        param = EllipticParam.from_k(0.6)
        self.assertAlmostEqual(param.kprime, 0.8)
        self.assertEqual(param.swapped().swapped(), param)
        self.assertAlmostEqual(param.Kprime, param.swapped().K)
        self.assertAlmostEqual(EllipticParam.from_kprime(0.6).k, 0.8)
        with self.assertRaises(OutOfRange):
            EllipticParam(0.6, 0.6)
        with self.assertRaises(OutOfRange):
            EllipticParam.from_k(1.0)

    def test_cross_ratio(self):
        self.assertAlmostEqual(cross_ratio(0, 1, 2, INFINITY), 2.0)
        self.assertAlmostEqual(cross_ratio(0, 1, 2, 3), 4 / 3)
        # Moebius invariance
        points = [0.3, 1.1, 2.5, 7.0]
        mapped = [(2 * z + 1) / (z + 3) for z in points]
        self.assertAlmostEqual(cross_ratio(*points), cross_ratio(*mapped))

    def test_cross_ratio_infinity_positions(self):
        points = [0.3, 1.1, 2.5, 7.0]
        for position in range(4):
            with self.subTest(position=position):
                # z -> 1 / (z - p) sends p to infinity and keeps the cross-ratio
                pole = points[position]
                mapped = [INFINITY if i == position else 1 / (z - pole)
                          for i, z in enumerate(points)]
                self.assertAlmostEqual(cross_ratio(*mapped), cross_ratio(*points))

    def test_cross_ratio_bad(self):
        with self.assertRaises(Degenerate):
            cross_ratio(0, 0, 1, 2)
        with self.assertRaises(Degenerate):
            cross_ratio(0, INFINITY, 1, INFINITY)
        with self.assertRaises(Degenerate):
            cross_ratio(0, 1, 1j, 2 + 3j)

    def test_modulus_from_crossratio(self):
        self.assertAlmostEqual(modulus_from_crossratio(2.0), 1.0, places=14)
        values = [modulus_from_crossratio(_) for _ in CROSS_RATIO_CASES]
        _LOG.debug('moduli for cross-ratios %s: %s', CROSS_RATIO_CASES, values)
        self.assertTrue(all(x > y for x, y in zip(values, values[1:])))
        for cr in (0.5, 1.0):
            with self.subTest(cr=cr):
                with self.assertRaises(OutOfRange):
                    modulus_from_crossratio(cr)

    def test_modulus_reciprocity(self):
        for cr in CROSS_RATIO_CASES:
            with self.subTest(cr=cr):
                self.assertAlmostEqual(
                    modulus_from_crossratio(cr) * modulus_from_crossratio(cr / (cr - 1)), 1.0,
                    places=12)

    def test_modulus_from_crossratio_excess_extremes(self):
        for excess in (1e-300, 1e-30, 1e30, 1e300, 1e304):
            with self.subTest(excess=excess):
                value = modulus_from_crossratio_excess(excess)
                self.assertTrue(math.isfinite(value) and value > 0)
                self.assertAlmostEqual(value * modulus_from_crossratio_excess(1 / excess), 1.0,
                                       places=12)
        # K(k) ~ log(4 / k') with k' ~ 2 excess^(-1/4) for a huge excess
        self.assertAlmostEqual(modulus_from_crossratio_excess(1e300),
                               math.pi / (4 * math.log(2) + math.log(1e300)), places=12)
        with self.assertRaises(OutOfRange):
            modulus_from_crossratio_excess(0.0)

    def test_gauss_jacobi_rule(self):
        rule = gauss_jacobi_rule(8, 0.0, 0.0)
        self.assertEqual(len(rule), 8)
        self.assertAlmostEqual(float(rule.weights.sum()), 2.0, places=14)
        self.assertAlmostEqual(rule.integrate(lambda t: t ** 2), 2 / 3, places=14)
        singular = gauss_jacobi_rule(16, 0.0, -0.5)
        self.assertAlmostEqual(singular.integrate(np.ones_like), 2 * math.sqrt(2), places=13)
        self.assertIs(gauss_jacobi_rule(8, 0.0, 0.0), rule)
        with self.assertRaises(ValueError):
            rule.nodes[0] = 0.0

    def test_gauss_jacobi_rule_bad(self):
        for n, alpha_exp, beta_exp in [(0, 0.0, 0.0), (4, -1.0, 0.0), (4, 0.0, -1.5)]:
            with self.subTest(n=n, alpha_exp=alpha_exp, beta_exp=beta_exp):
                with self.assertRaises(OutOfRange):
                    gauss_jacobi_rule(n, alpha_exp, beta_exp)

    @hypothesis.given(st.floats(-0.9, 2.0), st.integers(1, 12))
    def test_gauss_jacobi_polynomial_exactness(self, beta_exp, degree):
        rule = gauss_jacobi_rule(8, 0.0, beta_exp)
        # integral of (1 + t)^(beta_exp + degree) over (-1, 1)
        expected = 2 ** (beta_exp + degree + 1) / (beta_exp + degree + 1)
        self.assertAlmostEqual(rule.integrate(lambda t: (1 + t) ** degree) / expected, 1.0,
                               places=10)
