import math

import numpy as np
from numpy.testing import assert_allclose
from django.test import SimpleTestCase

from geophase.exceptions import ContourError, DegeneracyError, InputError
from model_core.hamiltonians import CartesianCoupling, ComplexCoupling, example_one, example_two
from phase_tracing.loops import CW, LoopSpec
from .ci_points import (
    CARTESIAN_ROOT, DEGENERATE, MINUS, ORIGIN, PLUS, SHIFTED_TRIGONAL, TRIGONAL_A, TRIGONAL_B, CiPoint,
)
from .locator import locate_cartesian_cis, locate_complex_cis, quartic_roots
from .signs import annulus_signs, jacobian_sign, predicted_loop_phase, trigonal_sign

SQUARE = ((-2.0, 2.0), (-2.0, 2.0))


def quartic_cis():
    return locate_complex_cis(ComplexCoupling.quartic(0.3, 0.003))


class CartesianLocatorTests(SimpleTestCase):

    def test_example_one(self):
        cis = locate_cartesian_cis(example_one(), SQUARE, grid=64)
        assert_allclose([ci.location for ci in cis], [(-1.0, 0.0), (1.0, 0.0)], atol=1e-12)
        self.assertEqual([ci.sign for ci in cis], [MINUS, PLUS])
        for ci in cis:
            self.assertEqual(ci.kind, CARTESIAN_ROOT)
            self.assertLessEqual(ci.residual, 1e-9)

    def test_example_two(self):
        cis = locate_cartesian_cis(example_two(), SQUARE, grid=40)
        assert_allclose([ci.location for ci in cis], [(-1.0, 0.0), (1.0, 0.0)], atol=1e-12)
        self.assertEqual([ci.sign for ci in cis], [PLUS, PLUS])

    def test_linear_model(self):
        cis = locate_cartesian_cis(CartesianCoupling([[1, 0, 1.0]], [[0, 1, 1.0]]), ((-1, 1), (-1, 1)), grid=16)
        self.assertEqual(len(cis), 1)
        assert_allclose(cis[0].location, (0.0, 0.0), atol=1e-14)

    def test_no_roots_is_empty(self):
        model = CartesianCoupling([[2, 0, 1.0], [0, 0, 1.0]], [[0, 1, 1.0]])
        self.assertEqual(locate_cartesian_cis(model, SQUARE, grid=32), [])

    def test_bad_arguments(self):
        with self.assertRaises(InputError):
            locate_cartesian_cis(example_one(), SQUARE, grid=8)
        with self.assertRaises(InputError):
            locate_cartesian_cis(example_one(), ((-2.0, math.inf), (-2.0, 2.0)), grid=32)
        with self.assertRaises(InputError):
            locate_cartesian_cis(ComplexCoupling(), SQUARE)


class JacobianSignTests(SimpleTestCase):

    def test_example_jacobians(self):
        one = example_one()
        self.assertEqual(one.jacobian(1.0, 0.0), 2.0)
        self.assertEqual(one.jacobian(-1.0, 0.0), -2.0)
        two = example_two()
        self.assertEqual(two.jacobian(1.0, 0.0), 2.0)
        self.assertEqual(two.jacobian(-1.0, 0.0), 2.0)

    def test_swapped_orientation(self):
        model = CartesianCoupling([[0, 1, 1.0]], [[1, 0, 1.0]])
        ci = CiPoint(0.0, 0.0, CARTESIAN_ROOT, 0.0)
        self.assertEqual(jacobian_sign(model, ci), MINUS)

    def test_touching_intersection(self):
        model = CartesianCoupling([[2, 0, 1.0]], [[0, 2, 1.0]])
        ci = CiPoint(0.0, 0.0, CARTESIAN_ROOT, 0.0)
        with self.assertLogs('ci_analysis.signs', level='WARNING'):
            self.assertEqual(jacobian_sign(model, ci), DEGENERATE)

    def test_wrong_kind(self):
        with self.assertRaises(InputError):
            jacobian_sign(example_one(), CiPoint(0.0, 0.0, ORIGIN, 0.0))


class ComplexLocatorTests(SimpleTestCase):

    def test_quartic_rings(self):
        cis = quartic_cis()
        self.assertEqual(len(cis), 10)
        self.assertEqual(cis[0].kind, ORIGIN)
        radii = [ci.q for ci in cis[1:]]
        assert_allclose(radii[0:3], [3.9489] * 3, atol=1e-4)
        assert_allclose(radii[3:6], [7.4172] * 3, atol=1e-4)
        assert_allclose(radii[6:9], [11.3661] * 3, atol=1e-4)
        assert_allclose([ci.phi for ci in cis[1:4]], [0.0, 2 * math.pi / 3, 4 * math.pi / 3], atol=1e-12)
        assert_allclose([ci.phi for ci in cis[7:10]], [math.pi / 3, math.pi, 5 * math.pi / 3], atol=1e-12)
        self.assertEqual([ci.kind for ci in cis[7:10]], [TRIGONAL_B] * 3)
        self.assertEqual([ci.sign for ci in cis], [MINUS] + [PLUS] * 3 + [MINUS] * 6)

    def test_roots_substitute(self):
        model = ComplexCoupling.quartic(0.3, 0.003)
        for ci in quartic_cis()[1:]:
            self.assertLessEqual(abs(model.v12(ci.q, ci.phi)), 1e-9 * model.K * ci.q)

    def test_quadratic_truncation(self):
        cis = locate_complex_cis(ComplexCoupling.quartic(0.3, 0.0))
        self.assertEqual(len(cis), 4)
        assert_allclose([ci.q for ci in cis[1:]], [1 / 0.3] * 3, rtol=1e-12)
        self.assertEqual([ci.sign for ci in cis[1:]], [PLUS] * 3)
        self.assertEqual({ci.kind for ci in cis[1:]}, {TRIGONAL_A})

    def test_linear_jahn_teller(self):
        cis = locate_complex_cis(ComplexCoupling.quartic(0.0, 0.0))
        self.assertEqual([(ci.kind, ci.sign) for ci in cis], [(ORIGIN, MINUS)])

    def test_shifted_trigonal(self):
        mu, lam = 0.3, -0.003
        model = ComplexCoupling.quartic(mu, lam)
        cis = locate_complex_cis(model)
        shifted = [ci for ci in cis if ci.kind == SHIFTED_TRIGONAL]
        self.assertEqual(len(shifted), 6)
        assert_allclose([ci.q for ci in shifted], [math.sqrt(-mu / lam)] * 6, rtol=1e-12)
        self.assertEqual({ci.sign for ci in shifted}, {MINUS})
        base = math.acos(math.sqrt(lam / -mu) / (2 * mu)) / 3
        self.assertTrue(any(abs(ci.phi - base) < 1e-9 for ci in shifted))
        for ci in shifted:
            self.assertLessEqual(ci.residual, 1e-9 * ci.q)

    def test_general_series_uses_polar_search(self):
        model = ComplexCoupling(K=1.0, q_plus=[[-0.3]], q_minus=[[0.003], [0.0]])
        series = ComplexCoupling(K=1.0, q_plus=[[-0.3, 0.0]], q_minus=[[0.003], [1e-12]])
        self.assertIsNone(series.quartic_parameters)
        expected = locate_complex_cis(model, q_max=10.0)
        found = locate_complex_cis(series, q_max=10.0)
        self.assertEqual(len(found), len(expected))
        for ci in expected:
            match = min(found, key=lambda f: math.hypot(f.x - ci.x, f.y - ci.y))
            self.assertLess(math.hypot(match.x - ci.x, match.y - ci.y), 1e-4)
            self.assertEqual(match.sign, ci.sign)

    def test_q_max_filter(self):
        cis = locate_complex_cis(ComplexCoupling.quartic(0.3, 0.003), q_max=5.0)
        self.assertEqual(len(cis), 4)


class TrigonalSignTests(SimpleTestCase):

    def test_threshold(self):
        mu, lam = 0.3, 0.003
        self.assertAlmostEqual(math.sqrt(mu / (3 * lam)), 5.7735, places=4)

    def test_random_same_sign_pairs(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            mu = rng.uniform(0.05, 1.0) * rng.choice([-1, 1])
            lam = math.copysign(rng.uniform(1e-4, 0.05), mu)
            model = ComplexCoupling.quartic(mu, lam)
            for ci in quartic_roots(model):
                sign = trigonal_sign(model, ci)
                if sign == DEGENERATE:
                    continue
                q0 = ci.q
                ratio = (3 * mu * q0 + 3 * lam * q0 ** 3) / (mu * q0 - 3 * lam * q0 ** 3)
                self.assertEqual(sign, PLUS if ratio > 0 else MINUS)

    def test_double_root_degenerate(self):
        mu = 0.3
        model = ComplexCoupling.quartic(mu, 4 * mu ** 3 / 27)
        ci = CiPoint(5.0, 0.0, TRIGONAL_A, 0.0)
        self.assertEqual(trigonal_sign(model, ci), DEGENERATE)

    def test_origin_and_cartesian(self):
        model = ComplexCoupling.quartic(0.3, 0.003)
        self.assertEqual(trigonal_sign(model, CiPoint(0.0, 0.0, ORIGIN, 0.0)), MINUS)
        with self.assertRaises(InputError):
            trigonal_sign(model, CiPoint(1.0, 0.0, CARTESIAN_ROOT, 0.0))


class LoopPhaseTests(SimpleTestCase):

    def test_quartic_accumulated_phases(self):
        cis = quartic_cis()
        phases = [predicted_loop_phase(cis, LoopSpec((0.0, 0.0), radius)) for radius in (2, 5, 9, 20)]
        self.assertEqual(phases, [-1, 2, -1, -4])

    def test_examples(self):
        one = locate_cartesian_cis(example_one(), SQUARE, grid=32)
        two = locate_cartesian_cis(example_two(), SQUARE, grid=32)
        self.assertEqual(predicted_loop_phase(one, LoopSpec((0.0, 0.0), 2.0)), 0)
        self.assertEqual(predicted_loop_phase(two, LoopSpec((0.0, 0.0), 2.0)), 2)

    def test_orientation(self):
        cis = quartic_cis()
        self.assertEqual(predicted_loop_phase(cis, LoopSpec((0.0, 0.0), 5.0, orientation=CW)), -2)

    def test_additive_over_annulus(self):
        cis = quartic_cis()
        for inner, outer in ((2, 5), (5, 9), (2, 20), (9, 20)):
            difference = (predicted_loop_phase(cis, LoopSpec((0.0, 0.0), outer))
                          - predicted_loop_phase(cis, LoopSpec((0.0, 0.0), inner)))
            self.assertEqual(difference, annulus_signs(cis, inner, outer))

    def test_ci_on_contour(self):
        cis = locate_cartesian_cis(example_one(), SQUARE, grid=32)
        with self.assertRaises(ContourError):
            predicted_loop_phase(cis, LoopSpec((0.0, 0.0), 1.0))

    def test_degenerate_inside(self):
        ci = CiPoint(5.0, 0.0, TRIGONAL_A, 0.0, sign=DEGENERATE)
        with self.assertRaises(DegeneracyError):
            predicted_loop_phase([ci], LoopSpec((0.0, 0.0), 6.0))
