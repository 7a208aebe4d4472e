import math

import numpy as np
from django.test import SimpleTestCase

from geophase.exceptions import InputError, NoLimitError, TableError
from gauge_fields.fields import MAGNETIC, YANG_MILLS
from model_core.hamiltonians import Y_CARRIES_B, BerryModel
from model_core.states import ADIABATIC, CIRCULATING
from .extrapolation import b_limit
from .quadrature import element_index, flux_matrix, line_integral, surface_flux
from .reports import FAIL, LINE, PASS, flux_report, table_report, table_targets


class BLimitTests(SimpleTestCase):

    def test_cos_theta_goes_to_zero(self):
        bs = [1e-1, 1e-2, 1e-3, 1e-4]
        values = [math.pi * b / math.hypot(1.0, b) for b in bs]
        result = b_limit(values, bs)
        self.assertEqual(result.order, 1)
        self.assertLess(abs(result.value), 1e-6)
        self.assertLess(result.residual, 1e-6)

    def test_sin_theta_goes_to_minus_pi(self):
        bs = [1e-1, 2.5e-2, 6.25e-3, 1.5625e-3, 3.90625e-4]
        values = [-math.pi / math.hypot(1.0, b) for b in bs]
        result = b_limit(values, bs)
        self.assertEqual(result.order, 2)
        self.assertAlmostEqual(result.value, -math.pi, delta=1e-9)

    def test_constant_sequence(self):
        result = b_limit([2.5] * 4, [1e-1, 1e-2, 1e-3, 1e-4])
        self.assertEqual(result.value, 2.5)
        self.assertEqual(result.residual, 0.0)

    def test_non_monotone(self):
        with self.assertRaises(NoLimitError):
            b_limit([1.0, 0.5, 0.75, 0.6], [1e-1, 1e-2, 1e-3, 1e-4])

    def test_bad_sequences(self):
        with self.assertRaises(InputError):
            b_limit([1.0, 2.0, 3.0], [1e-1, 1e-2, 1e-3])
        with self.assertRaises(InputError):
            b_limit([1.0, 2.0, 3.0, 4.0], [1e-1, 1e-2, 5e-3, 1e-4])
        with self.assertRaises(InputError):
            b_limit([1.0, 2.0, 3.0, 4.0], [1e-4, 1e-3, 1e-2, 1e-1])


class LineIntegralTests(SimpleTestCase):

    def test_diagonal_is_pi_cos_theta(self):
        value = line_integral(BerryModel(), ADIABATIC, '11', (1.0, 1.0), b=1.0)
        self.assertAlmostEqual(value.real, math.pi / math.sqrt(2.0), delta=1e-9)
        self.assertAlmostEqual(value.imag, 0.0, delta=1e-12)
        self.assertAlmostEqual(line_integral(BerryModel(), ADIABATIC, (2, 2), (1.0, 1.0)).real,
                               -math.pi / math.sqrt(2.0), delta=1e-9)

    def test_equator(self):
        for b in (1.0, 0.1):
            self.assertAlmostEqual(abs(line_integral(BerryModel(), ADIABATIC, '11', (1.0, 0.0), b=b)), 0.0, delta=1e-12)

    def test_off_diagonal_berry_phase(self):
        value = line_integral(BerryModel(), ADIABATIC, '12', (1.0, 1.0), b=1e-5)
        self.assertAlmostEqual(value.real, -math.pi, delta=1e-4)
        self.assertAlmostEqual(value.imag, 0.0, delta=1e-9)

    def test_off_diagonal_matches_sin_theta(self):
        for b in (1.0, 0.3):
            expected = -math.pi / math.hypot(1.0, b)
            self.assertAlmostEqual(line_integral(BerryModel(b=b), ADIABATIC, '12', (1.0, 1.0)).real, expected, delta=1e-9)

    def test_elliptic_phase_is_independent_of_gamma(self):
        for gamma in (0.25, 0.5, 1.0, 2.0, 4.0):
            model = BerryModel(b=1e-5, alpha=gamma, beta=1.0)
            value = line_integral(model, ADIABATIC, '12', (1.0, 1.0))
            self.assertAlmostEqual(value.real, -math.pi, delta=1e-3)
            diagonal = line_integral(model, ADIABATIC, '11', (1.0, 1.0))
            self.assertAlmostEqual(diagonal.real, 0.0, delta=1e-3)

    def test_alternative_formalism(self):
        standard = line_integral(BerryModel(b=0.5), ADIABATIC, '11', (1.0, 1.0))
        alternative = line_integral(BerryModel(b=0.5, active_axis=Y_CARRIES_B), ADIABATIC, '11', (1.0, 1.0))
        self.assertAlmostEqual(alternative.real, standard.real, delta=1e-9)

    def test_bad_arguments(self):
        with self.assertRaises(InputError):
            line_integral(BerryModel(), ADIABATIC, '11', (0.0, 1.0))
        with self.assertRaises(InputError):
            line_integral(BerryModel(), ADIABATIC, '++', (1.0, 1.0))
        with self.assertRaises(InputError):
            line_integral(BerryModel(), CIRCULATING, (3, 1), (1.0, 1.0))
        with self.assertRaises(InputError):
            line_integral(BerryModel(), 'diabatic', '11', (1.0, 1.0))

    def test_element_index(self):
        self.assertEqual(element_index(CIRCULATING, '-+'), (1, 0))
        self.assertEqual(element_index(ADIABATIC, (1, 2)), (0, 1))


class SurfaceFluxTests(SimpleTestCase):

    def test_infinite_disc_diagonal_vanishes(self):
        value = surface_flux(BerryModel(b=1.0), ADIABATIC, '11', MAGNETIC, (math.inf, 1.0))
        self.assertAlmostEqual(value.real, 0.0, delta=1e-6)

    def test_yang_mills_diagonal_is_seam_only(self):
        for b in (1.0, 1e-2):
            for q_max in (0.5, 2.0):
                F = flux_matrix(BerryModel(b=b), ADIABATIC, YANG_MILLS, (q_max, 1.0))
                self.assertAlmostEqual(F[0, 0].real, math.pi, delta=1e-8)
                self.assertAlmostEqual(F[1, 1].real, -math.pi, delta=1e-8)
                self.assertLess(abs(F[0, 1]), 1e-8)
                self.assertLess(abs(F[1, 0]), 1e-8)

    def test_stokes_consistency(self):
        for b in (1.0, 0.1, 0.01):
            model = BerryModel(b=b)
            for q_max in (0.5, 1.0, 2.0):
                for z in (0.5, 1.0):
                    H = flux_matrix(model, ADIABATIC, MAGNETIC, (q_max, z))
                    for element, index in (('11', (0, 0)), ('12', (0, 1)), ('22', (1, 1))):
                        line = line_integral(model, ADIABATIC, element, (q_max, z))
                        self.assertLess(abs(H[index] - line), 1e-6, msg=f"b={b} q={q_max} Z={z} {element}")

    def test_stokes_elliptic(self):
        model = BerryModel(b=0.1, alpha=0.5, beta=1.0)
        H = flux_matrix(model, ADIABATIC, MAGNETIC, (1.0, 1.0))
        for element, index in (('11', (0, 0)), ('12', (0, 1))):
            self.assertLess(abs(H[index] - line_integral(model, ADIABATIC, element, (1.0, 1.0))), 1e-6)

    def test_circulating_is_rotated_adiabatic(self):
        model = BerryModel(b=0.2)
        adiabatic = flux_matrix(model, ADIABATIC, MAGNETIC, (1.0, 1.0))
        circulating = flux_matrix(model, CIRCULATING, MAGNETIC, (1.0, 1.0))
        U = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
        np.testing.assert_allclose(circulating, U.T @ adiabatic @ U, atol=1e-9)

    def test_bad_arguments(self):
        with self.assertRaises(InputError):
            surface_flux(BerryModel(), ADIABATIC, '11', MAGNETIC, (0.0, 1.0))
        with self.assertRaises(InputError):
            surface_flux(BerryModel(), ADIABATIC, '11', 'electric', (1.0, 1.0))
        with self.assertRaises(InputError):
            surface_flux(BerryModel(), ADIABATIC, '11', MAGNETIC, (1.0, 1.0), b=0.0)


class FluxReportTests(SimpleTestCase):

    def test_line_report(self):
        report = flux_report(BerryModel(), ADIABATIC, '12', LINE)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.limit.value, -math.pi, delta=1e-6)
        self.assertEqual(len(report.values), len(report.b_sequence))
        self.assertEqual(report.as_dict()['model']['kind'], 'berry')

    def test_surface_report(self):
        report = flux_report(BerryModel(), ADIABATIC, '11', MAGNETIC, bs=[1e-1, 1e-2, 1e-3, 1e-4])
        self.assertAlmostEqual(report.limit.value, 0.0, delta=1e-6)
        self.assertEqual(report.limit.order, 1)

    def test_unknown_kind(self):
        with self.assertRaises(InputError):
            flux_report(BerryModel(), ADIABATIC, '11', 'electric')


class FluxTableTests(SimpleTestCase):

    def assertTableMatches(self, table, representation):
        self.assertTrue(table.passed, msg=[entry.as_dict() for entry in table.failing()])
        targets = table_targets(representation)
        for entry in table.entries:
            self.assertEqual(entry.status, PASS)
            self.assertAlmostEqual(entry.report.limit.value, targets[entry.kind][entry.element], delta=1e-3)
            self.assertLessEqual(entry.report.limit.residual, 1e-3)

    def test_adiabatic_table(self):
        table = table_report(BerryModel(), ADIABATIC)
        self.assertEqual(len(table.entries), 8)
        self.assertTableMatches(table, ADIABATIC)
        self.assertAlmostEqual(table.entry(MAGNETIC, '12').report.limit.value, -math.pi, delta=1e-3)
        self.assertAlmostEqual(table.entry(YANG_MILLS, '11').report.limit.value, math.pi, delta=1e-3)

    def test_circulating_table(self):
        table = table_report(BerryModel(), CIRCULATING)
        self.assertTableMatches(table, CIRCULATING)
        self.assertAlmostEqual(table.entry(MAGNETIC, '++').report.limit.value, -math.pi, delta=1e-3)
        self.assertAlmostEqual(table.entry(YANG_MILLS, '+-').report.limit.value, math.pi, delta=1e-3)

    def test_elliptic_table_matches_circular(self):
        elliptic = table_report(BerryModel(alpha=0.5, beta=1.0), ADIABATIC)
        self.assertTableMatches(elliptic, ADIABATIC)

    def test_magnetic_and_yang_mills_are_complementary(self):
        for representation in (ADIABATIC, CIRCULATING):
            table = table_report(BerryModel(), representation)
            magnetic, yang_mills = table.limits(MAGNETIC), table.limits(YANG_MILLS)
            for index in np.ndindex(2, 2):
                pair = sorted([abs(magnetic[index]), abs(yang_mills[index])])
                self.assertAlmostEqual(pair[0], 0.0, delta=1e-3)
                self.assertAlmostEqual(pair[1], math.pi, delta=1e-3)

    def test_below_the_seam(self):
        table = table_report(BerryModel(), ADIABATIC, contour=(1.0, -1.0))
        self.assertTrue(table.passed)
        self.assertAlmostEqual(table.entry(YANG_MILLS, '11').report.limit.value, -math.pi, delta=1e-3)

    def test_strict_raises(self):
        table = table_report(BerryModel(), ADIABATIC, tolerance=1e-14)
        self.assertEqual(table.entry(MAGNETIC, '11').status, FAIL)
        with self.assertRaises(TableError) as ctx:
            table_report(BerryModel(), ADIABATIC, tolerance=1e-14, strict=True)
        self.assertIn('magnetic[11]', ctx.exception.failing)

    def test_equator_rejected(self):
        with self.assertRaises(InputError):
            table_report(BerryModel(), ADIABATIC, contour=(1.0, 0.0))
