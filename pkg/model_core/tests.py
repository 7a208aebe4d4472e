import math

import numpy as np
from numpy.testing import assert_allclose
from django.test import SimpleTestCase

from geophase.exceptions import DegeneracyError, InputError, ModelParseError, RepresentationError
from .hamiltonians import (
    BerryModel, CartesianCoupling, ComplexCoupling, Y_CARRIES_B,
    eval_potential, example_one, example_two, mixing_angle, polar_point,
)
from .serializers import model_from_dict, model_to_dict
from .states import (
    ALT_BASIS, SpinorPair, adiabatic_states, from_circulating, monopole_states, to_circulating,
)


def eigen_oracle(H):
    """Dense eigensolver, ascending energies"""
    return np.linalg.eigh(H)


class PotentialTests(SimpleTestCase):

    def test_example_one_vanishes_at_ci(self):
        assert_allclose(eval_potential(example_one(), (1.0, 0.0)), np.zeros((2, 2)), atol=0)

    def test_berry_on_axis_is_diagonal(self):
        assert_allclose(eval_potential(BerryModel(b=1.0), (0.0, 0.0, 1.0)), np.diag([1.0, -1.0]))

    def test_quartic_near_root(self):
        model = ComplexCoupling.quartic(0.3, 0.003)
        H = eval_potential(model, polar_point(3.95, 0.0))
        self.assertLess(abs(H[0, 1]), 1e-2 * model.K * 3.95)

    def test_arity_mismatch(self):
        with self.assertRaises(InputError):
            eval_potential(example_one(), (1.0, 0.0, 0.0))
        with self.assertRaises(InputError):
            eval_potential(BerryModel(), (1.0, 0.0))

    def test_hermitian_and_traceless(self):
        rng = np.random.default_rng(7)
        models = [
            (example_one(), 2), (example_two(), 2),
            (ComplexCoupling.quartic(0.3, 0.003), 2),
            (BerryModel(b=0.3, alpha=0.5, beta=2.0), 3),
            (BerryModel(b=0.3, alpha=1.5, active_axis=Y_CARRIES_B), 3),
        ]
        for model, arity in models:
            for point in rng.uniform(-3, 3, size=(200, arity)):
                H = eval_potential(model, point)
                assert_allclose(H, H.conj().T, atol=1e-14)
                self.assertLess(abs(np.trace(H)), 1e-14)

    def test_analytic_derivatives_match_differences(self):
        rng = np.random.default_rng(11)
        terms = [[i, j, c] for (i, j), c in zip(
            [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (3, 0)], rng.normal(size=6))]
        model = CartesianCoupling(terms, terms[::-1])
        h = 1e-5
        for x, y in rng.uniform(-1, 1, size=(20, 2)):
            self.assertAlmostEqual(model.A_X(x, y), (model.A(x + h, y) - model.A(x - h, y)) / (2 * h), delta=1e-8)
            self.assertAlmostEqual(model.A_Y(x, y), (model.A(x, y + h) - model.A(x, y - h)) / (2 * h), delta=1e-8)
            self.assertAlmostEqual(model.B_X(x, y), (model.B(x + h, y) - model.B(x - h, y)) / (2 * h), delta=1e-8)
            self.assertAlmostEqual(model.B_Y(x, y), (model.B(x, y + h) - model.B(x, y - h)) / (2 * h), delta=1e-8)

    def test_degree_limit(self):
        with self.assertRaises(InputError):
            CartesianCoupling([[5, 4, 1.0]], [[0, 1, 1.0]])
        with self.assertRaises(InputError):
            ComplexCoupling(q_plus=[[1.0], [1.0, 1.0, 1.0]])

    def test_quartic_shortcut_matches_series(self):
        mu, lam = 0.3, 0.003
        shortcut = ComplexCoupling.quartic(mu, lam, K=2.0)
        series = ComplexCoupling(K=2.0, q_plus=[[-mu, 0.0]], q_minus=[[lam], []])
        self.assertEqual(series.quartic_parameters, (mu, lam))
        for q in (0.5, 3.95, 11.0):
            for phi in (0.0, 1.0, 4.0):
                direct = 2.0 * q * np.exp(-1j * phi) * (
                    1 - mu * q * np.exp(3j * phi) + lam * q ** 3 * np.exp(-3j * phi))
                self.assertAlmostEqual(abs(shortcut.v12(q, phi) - direct), 0.0, delta=1e-12)
                self.assertAlmostEqual(abs(series.v12(q, phi) - direct), 0.0, delta=1e-12)


class MixingAngleTests(SimpleTestCase):

    def test_on_b_zero_axis(self):
        self.assertEqual(mixing_angle(example_one(), (2.0, 0.0)), 0.0)

    def test_near_example_one_ci(self):
        alpha, delta = 0.1, 1e-3
        point = (1 + math.cos(alpha) * delta, math.sin(alpha) * delta)
        A, B = point[0] ** 2 - 1, point[1]
        theta = mixing_angle(example_one(), point)
        self.assertAlmostEqual(theta, 0.5 * math.atan2(B, A), delta=1e-15)
        self.assertAlmostEqual(theta, 0.5 * math.atan(alpha / 2), delta=1e-3)

    def test_range(self):
        theta = mixing_angle(example_one(), (0.0, 0.0))
        self.assertAlmostEqual(theta, math.pi / 2)

    def test_double_root_is_degenerate(self):
        mu = 0.3
        model = ComplexCoupling.quartic(mu, 4 * mu ** 3 / 27)
        q0 = 1.5 / mu
        self.assertAlmostEqual(q0, math.sqrt(mu / (3 * model.quartic_parameters[1])), places=12)
        with self.assertRaises(DegeneracyError) as ctx:
            mixing_angle(model, polar_point(q0, 0.0))
        self.assertIsNotNone(ctx.exception.point)

    def test_berry_rejected(self):
        with self.assertRaises(InputError):
            mixing_angle(BerryModel(), (1.0, 0.0, 0.0))


class AdiabaticStateTests(SimpleTestCase):

    def test_pole(self):
        states = adiabatic_states(BerryModel(b=1.0), (0.0, 0.0, 1.0))
        assert_allclose(states.lower, [0.0, 1.0], atol=1e-15)

    def test_equator_matches_eigensolver(self):
        states = adiabatic_states(BerryModel(b=1.0), (1.0, 0.0, 0.0))
        assert_allclose(states.lower, [-math.sqrt(0.5), math.sqrt(0.5)], atol=1e-15)
        energies, vectors = eigen_oracle(eval_potential(BerryModel(b=1.0), (1.0, 0.0, 0.0)))
        phase = np.vdot(vectors[:, 0], states.lower)
        assert_allclose(vectors[:, 0] * phase, states.lower, atol=1e-14)

    def test_elliptic_phase(self):
        states = adiabatic_states(BerryModel(b=1e-9, alpha=1.0, beta=2.0), (1.0, 1.0, 0.0))
        phi_prime = math.atan2(2.0, 1.0)
        self.assertAlmostEqual(phi_prime, 1.10715, places=5)
        self.assertAlmostEqual(np.angle(states.upper[0]), -phi_prime / 2, places=12)
        self.assertAlmostEqual(np.angle(states.upper[1]), phi_prime / 2, places=12)
        self.assertAlmostEqual(np.angle(states.lower[1]), phi_prime / 2, places=12)

    def test_eigen_residual_random(self):
        rng = np.random.default_rng(3)
        model = BerryModel(b=0.7, alpha=1.3, beta=0.6)
        for point in rng.uniform(-2, 2, size=(10000, 3)):
            H = eval_potential(model, point)
            states = adiabatic_states(model, point)
            R = model.geometry(point).R
            norm = np.linalg.norm(H, 2)
            self.assertLessEqual(np.linalg.norm(H @ states.upper - R * states.upper), 1e-12 * norm)
            self.assertLessEqual(np.linalg.norm(H @ states.lower + R * states.lower), 1e-12 * norm)
            self.assertTrue(states.is_orthonormal())

    def test_b_zero_and_degeneracy(self):
        with self.assertRaises(InputError):
            adiabatic_states(BerryModel(b=0.0), (1.0, 0.0, 1.0))
        with self.assertRaises(DegeneracyError):
            adiabatic_states(BerryModel(b=1.0), (0.0, 0.0, 0.0))

    def test_alternative_formalism_agrees(self):
        rng = np.random.default_rng(5)
        standard = BerryModel(b=1e-6, alpha=1.2, beta=0.8)
        alternative = BerryModel(b=1e-6, alpha=1.2, beta=0.8, active_axis=Y_CARRIES_B)
        for x, y, z in rng.uniform(-2, 2, size=(50, 3)):
            alt = adiabatic_states(alternative, (x, y, z))
            std = adiabatic_states(standard, (x, -z, y))
            assert_allclose(alt.states @ ALT_BASIS.conj(), std.states, atol=1e-5)
            H = eval_potential(alternative, (x, y, z))
            R = alternative.geometry((x, y, z)).R
            assert_allclose(H @ alt.upper, R * alt.upper, atol=1e-12)

    def test_monopole_states(self):
        states = monopole_states(1.0, math.pi / 3, 0.4)
        H = 0.5 * eval_potential(BerryModel(b=1.0), states.point)
        assert_allclose(H @ states.lower, -0.5 * states.lower, atol=1e-14)
        assert_allclose(H @ states.upper, 0.5 * states.upper, atol=1e-14)


class CirculatingTests(SimpleTestCase):

    def test_limit_is_diabatic_state(self):
        plus = to_circulating(adiabatic_states(BerryModel(b=1e-9), (1.0, 0.0, 0.0))).plus
        assert_allclose(plus, [0.0, 1.0], atol=1e-12)

    def test_orthogonality(self):
        circ = to_circulating(adiabatic_states(BerryModel(b=1.0), (1.0, 0.0, 1.0)))
        self.assertAlmostEqual(abs(np.vdot(circ.plus, circ.minus)), 0.0, delta=1e-12)
        self.assertTrue(circ.is_orthonormal())

    def test_inverse(self):
        rng = np.random.default_rng(9)
        model = BerryModel(b=0.4, alpha=2.0)
        for point in rng.uniform(-1, 1, size=(100, 3)):
            states = adiabatic_states(model, point)
            restored = from_circulating(to_circulating(states))
            assert_allclose(restored.states, states.states, atol=1e-14)

    def test_representation_tags(self):
        circ = to_circulating(adiabatic_states(BerryModel(), (1.0, 0.0, 1.0)))
        with self.assertRaises(RepresentationError):
            to_circulating(circ)
        with self.assertRaises(RepresentationError):
            circ.lower
        self.assertIsInstance(from_circulating(circ), SpinorPair)


class ModelSchemaTests(SimpleTestCase):

    def test_quartic_document(self):
        model = model_from_dict({'kind': 'complex', 'K': 1.0, 'mu': 0.3, 'lambda': 0.003})
        self.assertEqual(model.quartic_parameters, (0.3, 0.003))
        self.assertEqual(model_to_dict(model)['lambda'], 0.003)

    def test_round_trip(self):
        for model in (example_two(), BerryModel(b=0.1, alpha=0.5, active_axis=Y_CARRIES_B),
                      ComplexCoupling(K=1.0, q_plus=[[0.1, 0.2]], q_minus=[[0.01]])):
            document = model_to_dict(model)
            self.assertEqual(model_to_dict(model_from_dict(document)), document)

    def test_unknown_key_rejected(self):
        with self.assertRaises(ModelParseError):
            model_from_dict({'kind': 'berry', 'b': 1.0, 'gamma': 2.0})

    def test_mixed_complex_forms_rejected(self):
        with self.assertRaises(ModelParseError):
            model_from_dict({'kind': 'complex', 'mu': 0.3, 'q_plus': [[0.1]]})

    def test_bad_kind(self):
        with self.assertRaises(ModelParseError):
            model_from_dict({'kind': 'spline'})
        with self.assertRaises(ModelParseError):
            model_from_dict({'kind': 'cartesian', 'coeffs_A': [[9, 0, 1.0]], 'coeffs_B': []})
