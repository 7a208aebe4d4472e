import math

import numpy as np
from django.test import SimpleTestCase

from ci_analysis.ci_points import CARTESIAN_ROOT, DEGENERATE, MINUS, ORIGIN, PLUS, CiPoint
from ci_analysis.locator import locate_cartesian_cis, locate_complex_cis
from ci_analysis.signs import jacobian_sign, predicted_loop_phase
from geophase.exceptions import ContourError, InputError, UndersampledError
from model_core.hamiltonians import BerryModel, CartesianCoupling, ComplexCoupling, example_one, example_two
from .loops import CW, LoopSpec
from .tracer import local_sign, overlap_phase, trace_phase


class LoopSpecTests(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(InputError):
            LoopSpec((0.0, 0.0), 0.0)
        with self.assertRaises(InputError):
            LoopSpec((0.0, 0.0), 1.0, samples=32)
        with self.assertRaises(InputError):
            LoopSpec((0.0,), 1.0)
        with self.assertRaises(InputError):
            LoopSpec((0.0, 0.0), 1.0, orientation='sideways')

    def test_points_close_the_loop(self):
        loop = LoopSpec((1.0, 2.0, 3.0), 0.5, samples=64)
        points = loop.points()
        self.assertEqual(points.shape, (65, 3))
        np.testing.assert_allclose(points[0], points[-1], atol=1e-15)
        np.testing.assert_allclose(points[:, 2], 3.0)


class TracePhaseTests(SimpleTestCase):

    def test_example_one_single_cis(self):
        self.assertAlmostEqual(trace_phase(example_one(), LoopSpec((1.0, 0.0), 0.1)).total_phase, math.pi, places=12)
        self.assertAlmostEqual(trace_phase(example_one(), LoopSpec((-1.0, 0.0), 0.1)).total_phase, -math.pi, places=12)

    def test_no_ci_enclosed(self):
        trace = trace_phase(example_one(), LoopSpec((0.0, 1.5), 0.3))
        self.assertEqual(trace.winding, 0)
        self.assertAlmostEqual(trace.total_phase, 0.0, delta=1e-12)

    def test_examples_match_prediction(self):
        square = ((-2.0, 2.0), (-2.0, 2.0))
        for model, expected in ((example_one(), 0), (example_two(), 2)):
            loop = LoopSpec((0.0, 0.0), 2.0)
            cis = locate_cartesian_cis(model, square, grid=32)
            self.assertEqual(predicted_loop_phase(cis, loop), expected)
            self.assertEqual(trace_phase(model, loop).winding, expected)

    def test_quartic_radii(self):
        model = ComplexCoupling.quartic(0.3, 0.003)
        cis = locate_complex_cis(model)
        for radius, expected in ((2, -1), (5, 2), (9, -1), (20, -4)):
            loop = LoopSpec((0.0, 0.0), radius)
            trace = trace_phase(model, loop)
            self.assertEqual(trace.winding, expected)
            self.assertEqual(predicted_loop_phase(cis, loop), expected)
            self.assertLess(abs(trace.total_phase - expected * math.pi), 1e-3 * math.pi)

    def test_orientation_reversal(self):
        model = ComplexCoupling.quartic(0.3, 0.003)
        ccw = trace_phase(model, LoopSpec((0.0, 0.0), 5.0))
        cw = trace_phase(model, LoopSpec((0.0, 0.0), 5.0, orientation=CW))
        self.assertAlmostEqual(cw.total_phase, -ccw.total_phase, delta=1e-12)

    def test_doubling_is_stable(self):
        model = ComplexCoupling.quartic(0.3, 0.003)
        coarse = trace_phase(model, LoopSpec((0.0, 0.0), 9.0, samples=2048))
        fine = trace_phase(model, LoopSpec((0.0, 0.0), 9.0, samples=4096))
        self.assertLess(abs(fine.total_phase - coarse.total_phase), 1e-6)

    def test_partial_phase_csv_columns(self):
        trace = trace_phase(example_one(), LoopSpec((1.0, 0.0), 0.1, samples=64))
        self.assertEqual(trace.alphas.size, 65)
        self.assertEqual(trace.partial_phase[0], 0.0)
        self.assertAlmostEqual(trace.partial_phase[-1], trace.total_phase)

    def test_undersampled(self):
        loop = LoopSpec((1.0049, 0.0995), 0.1, samples=64)
        with self.assertRaises(UndersampledError):
            trace_phase(example_one(), loop, auto_refine=False)
        with self.assertLogs('phase_tracing.tracer', level='WARNING'):
            trace = trace_phase(example_one(), loop)
        self.assertEqual(trace.winding, 1)
        self.assertGreater(trace.samples, 64)

    def test_degeneracy_on_contour(self):
        with self.assertRaises(ContourError):
            trace_phase(example_one(), LoopSpec((0.0, 0.0), 1.0))

    def test_berry_model_rejected(self):
        with self.assertRaises(InputError):
            trace_phase(BerryModel(), LoopSpec((0.0, 0.0), 1.0))


class LocalSignTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(local_sign(example_one(), CiPoint(1.0, 0.0, CARTESIAN_ROOT, 0.0), 1e-3), PLUS)
        self.assertEqual(local_sign(example_one(), CiPoint(-1.0, 0.0, CARTESIAN_ROOT, 0.0), 1e-3), MINUS)
        self.assertEqual(local_sign(example_two(), CiPoint(-1.0, 0.0, CARTESIAN_ROOT, 0.0), 1e-3), PLUS)

    def test_quartic_origin(self):
        origin = CiPoint(0.0, 0.0, ORIGIN, 0.0)
        self.assertEqual(local_sign(ComplexCoupling.quartic(0.3, 0.003), origin, 1e-3), MINUS)

    def test_agrees_with_jacobian_on_random_models(self):
        rng = np.random.default_rng(17)
        monomials = [(i, j) for i in range(4) for j in range(4) if i + j <= 3]
        checked = 0
        for _ in range(50):
            coeffs_A = [[i, j, c] for (i, j), c in zip(monomials, rng.normal(size=len(monomials)))]
            coeffs_B = [[i, j, c] for (i, j), c in zip(monomials, rng.normal(size=len(monomials)))]
            model = CartesianCoupling(coeffs_A, coeffs_B)
            for ci in locate_cartesian_cis(model, ((-2.0, 2.0), (-2.0, 2.0)), grid=32):
                if ci.sign == DEGENERATE or abs(model.jacobian(ci.x, ci.y)) < 1e-3:
                    continue
                self.assertEqual(local_sign(model, ci, 1e-5), jacobian_sign(model, ci))
                checked += 1
        self.assertGreater(checked, 0)


class OverlapPhaseTests(SimpleTestCase):

    def test_equator_is_zero(self):
        phase = overlap_phase(BerryModel(b=1.0), LoopSpec((0.0, 0.0, 0.0), 1.0), 2)
        self.assertAlmostEqual(phase, 0.0, delta=1e-12)

    def test_diagonal_above_equator(self):
        phase = overlap_phase(BerryModel(b=1.0), LoopSpec((0.0, 0.0, 1.0), 1.0), 1)
        self.assertAlmostEqual(phase, math.pi / math.sqrt(2), delta=5e-4)

    def test_off_diagonal_small_b(self):
        value = overlap_phase(BerryModel(b=1e-4), LoopSpec((0.0, 0.0, 1.0), 1.0), (1, 2))
        self.assertAlmostEqual(value.real, -math.pi, delta=1e-3)
        self.assertAlmostEqual(value.imag, 0.0, delta=1e-6)

    def test_diagonal_matches_cos_theta(self):
        for b in (1.0, 0.1, 0.01):
            for q in (0.5, 1.0, 2.0):
                for z in (0.5, 1.0):
                    expected = math.pi * b * z / math.hypot(q, b * z)
                    phase = overlap_phase(BerryModel(b=b), LoopSpec((0.0, 0.0, z), q), 1)
                    self.assertAlmostEqual(phase, expected, delta=5e-4)

    def test_lower_state_is_opposite(self):
        loop = LoopSpec((0.0, 0.0, 1.0), 1.0)
        model = BerryModel(b=0.5)
        self.assertAlmostEqual(overlap_phase(model, loop, 1), -overlap_phase(model, loop, 2), delta=1e-9)

    def test_loop_on_seam(self):
        with self.assertRaises(ContourError):
            overlap_phase(BerryModel(b=1.0), LoopSpec((0.5, 0.0, 1.0), 0.5), 1)

    def test_bad_index(self):
        with self.assertRaises(InputError):
            overlap_phase(BerryModel(b=1.0), LoopSpec((0.0, 0.0, 1.0), 1.0), 3)
