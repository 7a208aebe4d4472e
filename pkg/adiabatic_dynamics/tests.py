import math

import numpy as np
from django.test import SimpleTestCase
from scipy.linalg import expm

from geophase.exceptions import InputError, RegimeError
from .doublet import (
    EXCITED, GROUND, DoubletDynamics, adiabatic_amplitudes, branch_terms, closed_form_amplitudes, closed_form_trace,
    extrapolated_phase, geometric_phase_extract, instantaneous_populations, integrate_tdse, surviving_state,
)
from .monopole import LOWER, UPPER, Monopole3D, berry3d_phase, berry3d_surface_integral


def cg_amplitude(G, omega, t):
    K = 0.5 * math.hypot(G, omega)
    return (math.cos(K * t) * math.cos(0.5 * omega * t)
            + (omega / (2 * K)) * math.sin(K * t) * math.sin(0.5 * omega * t)
            + 1j * (G / (2 * K)) * math.sin(K * t) * math.cos(0.5 * omega * t))


class DoubletDynamicsTests(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(InputError):
            DoubletDynamics(G=0.0, omega=1.0)
        with self.assertRaises(InputError):
            DoubletDynamics(G=1.0, omega=-1.0)
        with self.assertRaises(InputError):
            DoubletDynamics(G=1.0, omega=1.0, chi0=(1.0, 1.0))
        with self.assertRaises(InputError):
            DoubletDynamics.for_state('metastable', 1.0, 1.0)

    def test_auxiliary_functions_below_unity(self):
        for G in np.logspace(-2, 4, 13):
            for omega in np.logspace(-2, 4, 13):
                d = DoubletDynamics(G=G, omega=omega)
                self.assertLess(abs(d.f1), 1.0)
                self.assertLess(abs(d.f2), 1.0)
                self.assertGreaterEqual(d.K, 0.5 * G)

    def test_static_limit(self):
        d = DoubletDynamics(G=2.0, omega=0.0)
        self.assertEqual(d.f2, -1.0)
        self.assertEqual(d.f1, 1.0)
        with self.assertRaises(InputError):
            d.period


class ClosedFormTests(SimpleTestCase):

    def test_initial_conditions(self):
        chi1, chi2 = closed_form_amplitudes(DoubletDynamics.for_state(GROUND, 10.0, 1.0), 0.0)
        self.assertAlmostEqual(complex(chi1), 1.0, delta=1e-15)
        self.assertAlmostEqual(complex(chi2), 0.0, delta=1e-15)
        chi1, chi2 = closed_form_amplitudes(DoubletDynamics.for_state(EXCITED, 10.0, 1.0), 0.0)
        self.assertAlmostEqual(complex(chi1), 0.0, delta=1e-15)
        self.assertAlmostEqual(complex(chi2), 1.0, delta=1e-15)

    def test_reduces_to_ground_amplitude(self):
        d = DoubletDynamics.for_state(GROUND, 10.0, 1.0)
        chi1, _ = closed_form_amplitudes(d, 0.3)
        self.assertLess(abs(complex(chi1) - cg_amplitude(10.0, 1.0, 0.3)), 1e-14)
        for t in np.linspace(0.0, 7.0, 15):
            self.assertLess(abs(complex(closed_form_amplitudes(d, t)[0]) - cg_amplitude(10.0, 1.0, t)), 1e-13)

    def test_norm_is_one(self):
        rng = np.random.default_rng(3)
        chi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
        d = DoubletDynamics(G=3.0, omega=0.7, chi0=tuple(chi0 / np.linalg.norm(chi0)))
        chi1, chi2 = closed_form_amplitudes(d, rng.uniform(0.0, 50.0, size=100))
        np.testing.assert_allclose(np.abs(chi1) ** 2 + np.abs(chi2) ** 2, 1.0, atol=1e-13)

    def test_satisfies_schroedinger_equation(self):
        d = DoubletDynamics(G=4.0, omega=1.5, chi0=(math.sqrt(0.3), 1j * math.sqrt(0.7)))
        h = 1e-5
        for t in (0.2, 1.1, 3.7):
            forward = np.array(closed_form_amplitudes(d, t + h))
            backward = np.array(closed_form_amplitudes(d, t - h))
            current = np.array(closed_form_amplitudes(d, t))
            np.testing.assert_allclose(1j * (forward - backward) / (2 * h), d.hamiltonian(t) @ current, atol=1e-8)

    def test_adiabatic_form_is_second_order(self):
        G, t = 1.0, np.linspace(0.0, 10.0, 41)
        ratios = np.array([0.02, 0.01, 0.005])
        deviations = []
        for ratio in ratios:
            d = DoubletDynamics.for_state(GROUND, G, ratio * G)
            exact = np.array(closed_form_amplitudes(d, t))
            approx = np.array(adiabatic_amplitudes(d, t))
            deviations.append(np.max(np.abs(exact - approx)))
        slope = np.polyfit(np.log(ratios), np.log(deviations), 1)[0]
        self.assertAlmostEqual(slope, 2.0, delta=0.3)


class IntegrateTdseTests(SimpleTestCase):

    def assertMatchesClosedForm(self, d, t_end, bound):
        trace = integrate_tdse(d, t_end, tol=1e-10)
        chi1, chi2 = closed_form_amplitudes(d, trace.times)
        deviation = max(np.max(np.abs(trace.chi1 - chi1)), np.max(np.abs(trace.chi2 - chi2)))
        self.assertLessEqual(deviation, bound, msg=f"G={d.G} omega={d.omega}")
        return trace

    def test_matches_closed_form_over_a_period(self):
        for G, omega in ((10.0, 1.0), (100.0, 1.0), (2.0, 1.0)):
            self.assertMatchesClosedForm(DoubletDynamics.for_state(GROUND, G, omega), 2 * math.pi, 1e-9)

    def test_all_ratios(self):
        for ratio in (1.0, 10.0, 1e2, 1e3, 1e4):
            for which in (GROUND, EXCITED):
                self.assertMatchesClosedForm(DoubletDynamics.for_state(which, 10.0, 10.0 / ratio), 2.0, 1e-9)

    def test_arbitrary_initial_state(self):
        d = DoubletDynamics(G=5.0, omega=0.5, chi0=(0.6, 0.8j))
        self.assertMatchesClosedForm(d, 4.0, 1e-9)

    def test_norm_conservation(self):
        trace = integrate_tdse(DoubletDynamics.for_state(GROUND, 10.0, 1.0), 2 * math.pi, tol=1e-10)
        self.assertLessEqual(np.max(np.abs(trace.norm - 1.0)), 1e-9)

    def test_static_hamiltonian(self):
        d = DoubletDynamics.for_state(GROUND, 3.0, 0.0)
        trace = integrate_tdse(d, 2.0, tol=1e-10)
        expected = np.array([expm(-1j * d.hamiltonian(0.0) * t) @ np.array([1.0, 0.0]) for t in trace.times])
        np.testing.assert_allclose(trace.chi, expected, atol=1e-9)
        np.testing.assert_allclose(trace.chi1, np.exp(1.5j * trace.times), atol=1e-9)

    def test_excited_state_stays_excited(self):
        G, omega = 100.0, 1.0
        d = DoubletDynamics.for_state(EXCITED, G, omega)
        populations = instantaneous_populations(d, integrate_tdse(d, d.period, tol=1e-10))
        self.assertGreaterEqual(np.min(populations[:, 1]), 1.0 - (omega / G) ** 2)

    def test_tolerance_floor(self):
        with self.assertRaises(InputError):
            integrate_tdse(DoubletDynamics(G=1.0, omega=1.0), 1.0, tol=1e-14)

    def test_trace_rows(self):
        trace = closed_form_trace(DoubletDynamics(G=1.0, omega=1.0), 1.0, samples=10)
        rows = trace.rows()
        self.assertEqual(rows.shape, (11, 6))
        np.testing.assert_allclose(rows[:, 5], 1.0, atol=1e-13)


class GeometricPhaseTests(SimpleTestCase):

    def test_signs(self):
        G = 1000.0
        ground = geometric_phase_extract(DoubletDynamics.for_state(GROUND, G, 1.0), GROUND)
        excited = geometric_phase_extract(DoubletDynamics.for_state(EXCITED, G, 1.0), EXCITED)
        self.assertAlmostEqual(ground, -math.pi, delta=0.01)
        self.assertAlmostEqual(excited, math.pi, delta=0.01)
        self.assertAlmostEqual(ground, -excited, delta=2 * math.pi / G)

    def test_components_agree(self):
        for which in (GROUND, EXCITED):
            d = DoubletDynamics.for_state(which, 100.0, 1.0)
            first = geometric_phase_extract(d, which, component=1)
            second = geometric_phase_extract(d, which, component=2)
            self.assertEqual(math.copysign(1.0, first), math.copysign(1.0, second))
            self.assertAlmostEqual(first, second, delta=1e-6)

    def test_non_adiabatic_regime(self):
        with self.assertRaises(RegimeError):
            geometric_phase_extract(DoubletDynamics.for_state(GROUND, 2.0, 1.0), GROUND)
        with self.assertRaises(RegimeError):
            geometric_phase_extract(DoubletDynamics.for_state(GROUND, 2.0, 0.0), GROUND)

    def test_extrapolated(self):
        limit, residual, values = extrapolated_phase(GROUND)
        self.assertEqual(len(values), 3)
        self.assertAlmostEqual(limit, -math.pi, delta=1e-6)
        self.assertLess(residual, 1e-6)
        self.assertAlmostEqual(extrapolated_phase(EXCITED)[0], math.pi, delta=1e-6)

    def test_sign_follows_initial_amplitudes(self):
        ground = DoubletDynamics(G=1000.0, omega=1.0, chi0=(1.0, 0.0))
        excited = DoubletDynamics(G=1000.0, omega=1.0, chi0=(0.0, 1.0))
        self.assertEqual(surviving_state(ground), GROUND)
        self.assertEqual(surviving_state(excited), EXCITED)
        self.assertAlmostEqual(geometric_phase_extract(ground), -math.pi, delta=0.01)
        self.assertAlmostEqual(geometric_phase_extract(excited), math.pi, delta=0.01)

    def test_mismatched_label_rejected(self):
        with self.assertRaises(InputError):
            geometric_phase_extract(DoubletDynamics(G=1000.0, omega=1.0, chi0=(1.0, 0.0)), EXCITED)
        with self.assertRaises(InputError):
            geometric_phase_extract(DoubletDynamics(G=1000.0, omega=1.0, chi0=(0.0, 1.0)), GROUND)

    def test_mostly_ground_superposition(self):
        d = DoubletDynamics(G=1000.0, omega=1.0, chi0=(math.sqrt(0.999), math.sqrt(0.001)))
        self.assertEqual(surviving_state(d), GROUND)
        self.assertAlmostEqual(geometric_phase_extract(d), -math.pi, delta=0.01)

    def test_comparable_branches_are_ambiguous(self):
        for chi0 in ((math.sqrt(0.5), math.sqrt(0.5)), (math.sqrt(0.9), math.sqrt(0.1))):
            with self.assertRaises(RegimeError):
                geometric_phase_extract(DoubletDynamics(G=1000.0, omega=1.0, chi0=chi0))

    def test_branches_sum_to_exact_solution(self):
        d = DoubletDynamics(G=3.0, omega=1.0, chi0=(0.6, 0.8j))
        t = np.linspace(0.0, 10.0, 41)
        exact = closed_form_amplitudes(d, t)
        for component in (1, 2):
            forward, backward = branch_terms(d, component, t)
            np.testing.assert_allclose(forward + backward, exact[component - 1], atol=1e-13)


class MonopoleTests(SimpleTestCase):

    def test_closed_form(self):
        self.assertAlmostEqual(berry3d_phase(Monopole3D(math.pi / 2), LOWER), -math.pi)
        self.assertAlmostEqual(berry3d_phase(Monopole3D(0.0), LOWER), 0.0)
        self.assertAlmostEqual(berry3d_phase(Monopole3D(math.pi / 3), LOWER), -math.pi / 2)
        half = Monopole3D(math.pi / 2)
        self.assertAlmostEqual(np.exp(1j * berry3d_phase(half, LOWER)), np.exp(1j * berry3d_phase(half, UPPER)))

    def test_surface_integral(self):
        self.assertAlmostEqual(berry3d_surface_integral(Monopole3D(math.pi / 2), LOWER), -math.pi, delta=1e-8)
        self.assertAlmostEqual(berry3d_surface_integral(Monopole3D(math.pi), LOWER), -2 * math.pi, delta=1e-8)
        self.assertAlmostEqual(berry3d_surface_integral(Monopole3D(math.pi / 3, R=2.5), LOWER), -math.pi / 2, delta=1e-8)

    def test_random_caps(self):
        rng = np.random.default_rng(11)
        for theta in rng.uniform(0.0, math.pi, size=20):
            cap = Monopole3D(theta)
            lower = berry3d_surface_integral(cap, LOWER)
            self.assertAlmostEqual(lower, berry3d_phase(cap, LOWER), delta=1e-8)
            self.assertAlmostEqual(berry3d_surface_integral(cap, UPPER), -lower, delta=1e-10)

    def test_validation(self):
        with self.assertRaises(InputError):
            Monopole3D(4.0)
        with self.assertRaises(InputError):
            Monopole3D(1.0, R=0.0)
        with self.assertRaises(InputError):
            berry3d_phase(Monopole3D(1.0), 'middle')
