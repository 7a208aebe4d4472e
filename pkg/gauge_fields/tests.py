import math

import numpy as np
from numpy.testing import assert_allclose
from django.test import SimpleTestCase

from geophase.exceptions import InputError, SeamError
from model_core.hamiltonians import BerryModel, Y_CARRIES_B, eval_potential
from model_core.states import ADIABATIC, CIRCULATING
from .fields import (
    MAGNETIC, YANG_MILLS, angle_gradients, gauge_field, magnetic_field, nact, seam_limit, wedge,
    yang_mills_field,
)
from .oracles import magnetic_numeric, nact_numeric
from .vectors import CARTESIAN, CYLINDRICAL, Vec3C

SQRT2 = math.sqrt(2.0)


def random_points(rng, count, q_range=(0.2, 2.0), z_range=(-2.0, 2.0)):
    q = rng.uniform(*q_range, size=count)
    phi = rng.uniform(-math.pi, math.pi, size=count)
    z = rng.uniform(*z_range, size=count)
    return np.column_stack([q * np.cos(phi), q * np.sin(phi), z])


def eigenvector_coupling(model, point, h=1e-5):
    """<upper|grad|lower> from eigh of the potential, neighbours phase-aligned to the centre"""
    p = np.asarray(point, dtype=float)
    _, centre = np.linalg.eigh(eval_potential(model, p))
    lower, upper = centre[:, 0], centre[:, 1]
    coupling = np.zeros(3, dtype=complex)
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        aligned = []
        for neighbour in (p - offset, p + offset):
            vector = np.linalg.eigh(eval_potential(model, neighbour))[1][:, 0]
            aligned.append(vector * np.exp(-1j * np.angle(np.vdot(lower, vector))))
        coupling[axis] = np.vdot(upper, aligned[1] - aligned[0]) / (2.0 * h)
    return coupling


class Vec3CTests(SimpleTestCase):

    def test_basis_round_trip(self):
        v = Vec3C([1.0 + 2j, -0.5j, 3.0], CYLINDRICAL, phi=0.7)
        back = v.to_cartesian().to_cylindrical()
        assert_allclose(back.components, v.components, atol=1e-15)

    def test_q_hat_in_cartesian(self):
        q_hat = Vec3C([1.0, 0.0, 0.0], CYLINDRICAL, phi=math.pi / 2).to_cartesian()
        assert_allclose(q_hat.components, [0.0, 1.0, 0.0], atol=1e-15)
        self.assertEqual(q_hat.basis, CARTESIAN)

    def test_cross_right_handed(self):
        q_hat = Vec3C([1.0, 0.0, 0.0], phi=0.3)
        phi_hat = Vec3C([0.0, 1.0, 0.0], phi=0.3)
        self.assertTrue(q_hat.cross(phi_hat).is_close(Vec3C([0.0, 0.0, 1.0], phi=0.3)))

    def test_mixed_basis_arithmetic(self):
        cyl = Vec3C([1.0, 0.0, 0.0], CYLINDRICAL, phi=math.pi / 2)
        cart = Vec3C([0.0, 1.0, 0.0], CARTESIAN)
        self.assertLess((cyl - cart).norm(), 1e-15)

    def test_bad_vectors(self):
        with self.assertRaises(InputError):
            Vec3C([1.0, 2.0])
        with self.assertRaises(InputError):
            Vec3C([1.0, 2.0, 3.0], 'spherical')


class AngleGradientTests(SimpleTestCase):

    def test_grad_phi_circular(self):
        grads = angle_gradients(BerryModel(b=1.0), (2.0, 0.0, 1.0))
        assert_allclose(grads.grad_phi, [0.0, 0.5, 0.0])

    def test_grad_theta_equator(self):
        grads = angle_gradients(BerryModel(b=1.0), (1.0, 0.0, 0.0))
        assert_allclose(grads.grad_theta, [0.0, 0.0, -1.0], atol=1e-15)

    def test_equal_couplings_reduce_to_circular(self):
        model = BerryModel(b=0.5, alpha=2.0, beta=2.0)
        point = (0.3, -1.1, 0.4)
        q = math.hypot(0.3, -1.1)
        assert_allclose(angle_gradients(model, point).grad_phi, [0.0, 1.0 / q, 0.0], rtol=1e-15)

    def test_against_finite_differences(self):
        model = BerryModel(b=0.7, alpha=1.6, beta=0.6)
        h = 1e-6
        for point in ((0.8, 0.5, 0.3), (-0.4, 0.9, -1.2), (1.1, -0.2, 0.0)):
            p = np.array(point)
            geometry = model.geometry(p)
            fd_theta, fd_phi = np.zeros(3), np.zeros(3)
            for axis in range(3):
                e = np.zeros(3)
                e[axis] = h
                up, down = model.geometry(p + e), model.geometry(p - e)
                fd_theta[axis] = (up.theta - down.theta) / (2 * h)
                fd_phi[axis] = (up.phi_prime - down.phi_prime) / (2 * h)
            grads = angle_gradients(model, point)
            c, s = math.cos(geometry.phi), math.sin(geometry.phi)
            to_cartesian = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
            assert_allclose(to_cartesian @ grads.grad_theta, fd_theta, atol=1e-8)
            assert_allclose(to_cartesian @ grads.grad_phi, fd_phi, atol=1e-8)
            assert_allclose(grads.wedge, np.cross(grads.grad_theta, grads.grad_phi), atol=1e-14)

    def test_seam_rejected(self):
        with self.assertRaises(SeamError):
            angle_gradients(BerryModel(b=1.0), (0.0, 0.0, 1.0))


class NactTests(SimpleTestCase):

    def test_equator_off_diagonal(self):
        tau = nact(BerryModel(b=1.0), ADIABATIC, (1.0, 0.0, 0.0))
        assert_allclose(tau.regular[0, 1], [0.0, 0.5j, 0.5], atol=1e-15)
        numeric = nact_numeric(BerryModel(b=1.0), ADIABATIC, (1.0, 0.0, 0.0))
        assert_allclose(numeric.regular[0, 1], tau.regular[0, 1], atol=1e-8)

    def test_circulating_small_b(self):
        tau = nact(BerryModel(b=1e-6), CIRCULATING, (1.0, 0.0, 1.0))
        assert_allclose(tau.regular[0, 0], [0.0, 0.5j, 0.0], atol=1e-6)

    def test_circulating_plus_plus_form(self):
        model = BerryModel(b=0.8)
        point = (0.6, 0.3, 0.9)
        R = model.geometry(point).R
        tau = nact(model, CIRCULATING, point)
        assert_allclose(tau.regular[0, 0], [0.0, 0.5j / R, 0.0], atol=1e-14)

    def test_elliptic_profile(self):
        model = BerryModel(b=1e-9, alpha=0.5, beta=1.0)
        tau = nact(model, ADIABATIC, (1.0, 0.0, 1.0))
        assert_allclose(tau.regular[0, 1], [0.0, 1.0j, 0.0], atol=1e-7)
        for phi in np.linspace(0.1, 3.0, 12):
            gamma = 0.5
            expected = 0.5j * gamma / (1 + (gamma ** 2 - 1) * math.cos(phi) ** 2)
            tau = nact(model, ADIABATIC, (math.cos(phi), math.sin(phi), 1.0))
            self.assertAlmostEqual(abs(tau.regular[0, 1, 1] - expected), 0.0, delta=1e-7)

    def test_matches_numeric(self):
        model = BerryModel(b=1.0)
        point = (1.0, 0.0, 1.0)
        closed = nact(model, ADIABATIC, point)
        numeric = nact_numeric(model, ADIABATIC, point, h=1e-4)
        assert_allclose(numeric.regular, closed.regular, atol=1e-8)
        self.assertTrue(numeric.is_anti_hermitian(tol=1e-8))

    def test_elliptic_matches_numeric(self):
        model = BerryModel(b=0.6, alpha=2.0, beta=1.0)
        point = (math.cos(math.pi / 4), math.sin(math.pi / 4), 0.7)
        for representation in (ADIABATIC, CIRCULATING):
            closed = nact(model, representation, point)
            numeric = nact_numeric(model, representation, point)
            assert_allclose(numeric.regular, closed.regular, atol=1e-7)

    def test_anti_hermitian_random(self):
        rng = np.random.default_rng(1)
        for point in random_points(rng, 10000):
            b, alpha, beta = rng.uniform(0.01, 2.0, size=3)
            model = BerryModel(b=b, alpha=alpha, beta=beta)
            tau = nact(model, ADIABATIC, point)
            self.assertTrue(tau.is_anti_hermitian())
            self.assertTrue(np.all(tau.regular[0, 0].real == 0.0))
            assert_allclose(tau.regular[0, 0], -tau.regular[1, 1], atol=0)

    def test_b_scaling(self):
        bs = np.array([1e-4, 1e-3, 1e-2])
        magnitudes = [np.linalg.norm(nact(BerryModel(b=b), ADIABATIC, (1.0, 0.0, 1.0)).regular[0, 0]) for b in bs]
        slopes = np.diff(np.log(magnitudes)) / np.diff(np.log(bs))
        assert_allclose(slopes, 1.0, atol=1e-3)

    def test_seam_only_on_axis(self):
        tau = nact(BerryModel(b=0.1), ADIABATIC, (0.0, 0.0, 1.0), seam_only=True)
        assert_allclose(tau.regular, 0.0)
        assert_allclose(tau.seam[0, 1], [-math.pi / 2, 0.0, 0.0], atol=1e-15)
        with self.assertRaises(SeamError):
            nact(BerryModel(b=0.1), ADIABATIC, (0.0, 0.0, 1.0))

    def test_bad_arguments(self):
        with self.assertRaises(InputError):
            nact(BerryModel(b=0.0), ADIABATIC, (1.0, 0.0, 0.0))
        with self.assertRaises(InputError):
            nact(BerryModel(b=1.0), 'diabatic', (1.0, 0.0, 0.0))

    def test_alternative_formalism(self):
        rng = np.random.default_rng(4)
        alternative = BerryModel(b=1e-6, alpha=1.2, beta=0.8, active_axis=Y_CARRIES_B)
        for point in random_points(rng, 20, z_range=(0.5, 1.5))[:, [0, 2, 1]]:
            alt = nact(alternative, ADIABATIC, point)
            numeric = nact_numeric(alternative, ADIABATIC, point)
            assert_allclose(numeric.cartesian(), alt.cartesian(), atol=1e-5)
            # |tau_12| per axis does not depend on the phase convention of the states
            assert_allclose(np.abs(alt.cartesian()[0, 1]),
                            np.abs(eigenvector_coupling(alternative, point)), atol=1e-6)


class MagneticFieldTests(SimpleTestCase):

    def test_regular_part_above_plane(self):
        H = magnetic_field(BerryModel(b=1.0), ADIABATIC, (1.0, 0.0, 1.0))
        expected = -1.0 / (4 * SQRT2)
        assert_allclose(H.regular[0, 0], [expected, 0.0, expected], atol=1e-15)
        numeric = magnetic_numeric(BerryModel(b=1.0), ADIABATIC, (1.0, 0.0, 1.0))
        assert_allclose(numeric.regular, H.regular, atol=1e-7)

    def test_elliptic_matches_numeric_curl(self):
        model = BerryModel(b=0.4, alpha=1.5, beta=0.5)
        for point in ((0.7, 0.4, 0.9), (-0.3, 1.2, -0.5)):
            for representation in (ADIABATIC, CIRCULATING):
                closed = magnetic_field(model, representation, point)
                numeric = magnetic_numeric(model, representation, point)
                assert_allclose(numeric.regular, closed.regular, atol=1e-7)

    def test_symmetries(self):
        H = magnetic_field(BerryModel(b=0.3, alpha=1.4), ADIABATIC, (0.5, -0.7, 0.2))
        assert_allclose(H.regular[0, 0], -H.regular[1, 1])
        assert_allclose(H.regular[0, 1], H.regular[1, 0])

    def test_diagonal_vanishes_off_seam_as_b_goes_to_zero(self):
        for q in (0.5, 1.0, 3.0):
            H = magnetic_field(BerryModel(b=1e-8), ADIABATIC, (q, 0.0, 1.0))
            self.assertLess(np.max(np.abs(H.regular[0, 0])), 1e-7)

    def test_elliptic_seam_profile(self):
        model = BerryModel(b=1e-9, alpha=0.5, beta=1.0)
        side = magnetic_field(model, ADIABATIC, (0.0, 1.0, 1.0))
        self.assertAlmostEqual(side.seam_profile()[0, 1].real, -0.25, delta=1e-8)
        peak = magnetic_field(model, ADIABATIC, (1.0, 0.0, 1.0))
        self.assertAlmostEqual(peak.seam_profile()[0, 1].real, -1.0, delta=1e-8)

    def test_seam_limit(self):
        H = magnetic_field(BerryModel(b=1.0), ADIABATIC, (1.0, 0.0, 1.0))
        assert_allclose(seam_limit(H), [[0.5, 0.0], [0.0, -0.5]])
        H = magnetic_field(BerryModel(b=1.0), CIRCULATING, (1.0, 0.0, 1.0))
        assert_allclose(seam_limit(H), [[0.0, 0.5], [0.5, 0.0]], atol=1e-15)
        below = magnetic_field(BerryModel(b=1.0), ADIABATIC, (1.0, 0.0, -1.0))
        assert_allclose(seam_limit(below), [[-0.5, 0.0], [0.0, 0.5]])


class YangMillsTests(SimpleTestCase):

    def test_adiabatic_regular_part_vanishes(self):
        worst = 0.0
        for q in np.linspace(0.05, 3.0, 50):
            for z in np.linspace(-2.0, 2.0, 50):
                for b in (1e-3, 1e-2, 0.1, 1.0, 3.0):
                    F = yang_mills_field(BerryModel(b=b, alpha=1.3, beta=0.7), ADIABATIC, (q, 0.3 * q, z))
                    worst = max(worst, float(np.max(np.abs(F.regular))))
        self.assertLess(worst, 1e-10)

    def test_seam_coefficients(self):
        F = yang_mills_field(BerryModel(b=1.0), ADIABATIC, (1e-8, 0.0, 1.0))
        self.assertAlmostEqual(F.seam[0, 1, 2].real, -0.5, delta=1e-12)
        point = (0.4, 0.0, 1.0)
        F = yang_mills_field(BerryModel(b=1.0), ADIABATIC, point)
        R = math.hypot(0.4, 1.0)
        self.assertAlmostEqual(F.seam[0, 0, 2].real, 1.0 / (2 * 0.4 * R), delta=1e-12)
        self.assertEqual(F.kind, YANG_MILLS)

    def test_defining_identity_in_both_representations(self):
        rng = np.random.default_rng(8)
        for point in random_points(rng, 100):
            model = BerryModel(b=rng.uniform(0.05, 1.5), alpha=rng.uniform(0.5, 2.0))
            for representation in (ADIABATIC, CIRCULATING):
                F = yang_mills_field(model, representation, point)
                H = magnetic_field(model, representation, point)
                tau = nact(model, representation, point)
                assert_allclose(F.regular, H.regular + 1j * wedge(tau.regular, tau.regular), atol=1e-12)

    def test_circulating_regular_part_vanishes(self):
        F = gauge_field(BerryModel(b=0.5), CIRCULATING, YANG_MILLS, (0.8, 0.1, 0.6))
        assert_allclose(F.regular, 0.0, atol=1e-14)
        self.assertEqual(gauge_field(BerryModel(b=0.5), ADIABATIC, MAGNETIC, (0.8, 0.1, 0.6)).kind, MAGNETIC)

    def test_wedge_by_hand(self):
        left = np.zeros((2, 2, 3), dtype=complex)
        right = np.zeros((2, 2, 3), dtype=complex)
        left[0, 1] = [1.0, 0.0, 0.0]
        right[1, 0] = [0.0, 1.0, 0.0]
        result = wedge(left, right)
        assert_allclose(result[0, 0], [0.0, 0.0, 1.0])
        assert_allclose(result[1, 1], 0.0)
