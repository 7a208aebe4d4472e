import math

import numpy as np
from django.test import SimpleTestCase

from flux_quadrature.reports import table_report
from geophase.exceptions import InputError, ModelParseError
from gauge_fields.fields import MAGNETIC, YANG_MILLS, yang_mills_field
from model_core.hamiltonians import BerryModel
from model_core.states import ADIABATIC
from .effh import EXPECTATION, EffHSpec, build_effH, flux_tensor
from .serializers import complex_to_json, effh_spec_from_dict, effh_spec_to_dict

IDENTITY_PER_AXIS = np.array([np.eye(2)] * 3)


def random_hermitian(rng, n=2):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (A + A.conj().T)


def random_unitary(rng, n=2):
    Q, R = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


class BuildEffHTests(SimpleTestCase):

    def setUp(self):
        self.rng = np.random.default_rng(5)
        self.F = np.array([random_hermitian(self.rng) for _ in range(3)])

    def test_zero_coefficients(self):
        H = build_effH(EffHSpec(F=self.F, op1=IDENTITY_PER_AXIS, op2=np.zeros((3, 3, 2, 2))))
        np.testing.assert_array_equal(H, np.zeros((2, 2)))

    def test_linear_term_sums_axes(self):
        seam = yang_mills_field(BerryModel(b=0.5), ADIABATIC, (0.3, 0.4, 1.0)).seam
        F = np.moveaxis(seam, -1, 0)
        H = build_effH(EffHSpec(F=F, C1=1.0, op1=IDENTITY_PER_AXIS))
        np.testing.assert_allclose(H, F[0] + F[1] + F[2], atol=1e-15)

    def test_quadratic_term(self):
        op2 = np.zeros((3, 3, 2, 2), dtype=complex)
        for a in range(3):
            op2[a, a] = np.eye(2)
        H = build_effH(EffHSpec(F=self.F, C2=0.7, op2=op2))
        expected = np.zeros((2, 2), dtype=complex)
        for a in range(3):
            expected += self.F[a] @ self.F[a]
        np.testing.assert_allclose(H, 0.7 * expected, atol=1e-14)

    def test_linearity(self):
        op1 = np.array([s * np.eye(2) for s in self.rng.normal(size=3)])
        op2 = np.zeros((3, 3, 2, 2), dtype=complex)
        for a in range(3):
            op2[a, a] = self.rng.normal() * np.eye(2)

        def H(c1, c2):
            return build_effH(EffHSpec(F=self.F, C1=c1, C2=c2, op1=op1, op2=op2))

        np.testing.assert_allclose(H(2.0, -1.5), 2.0 * H(1.0, 0.0) - 1.5 * H(0.0, 1.0), atol=1e-13)

    def test_unitary_covariance(self):
        op1 = self.rng.normal(size=(3, 2, 2)) + 1j * self.rng.normal(size=(3, 2, 2))
        op2 = self.rng.normal(size=(3, 3, 2, 2)) + 1j * self.rng.normal(size=(3, 3, 2, 2))
        U = random_unitary(self.rng)
        Ud = U.conj().T
        with self.assertLogs('effective_hamiltonian.effh', level='WARNING'):
            original = build_effH(EffHSpec(F=self.F, C1=0.4, C2=1.3, op1=op1, op2=op2))
            rotated = build_effH(EffHSpec(
                F=np.einsum('ij,ajk,kl->ail', Ud, self.F, U), C1=0.4, C2=1.3,
                op1=np.einsum('ij,ajk,kl->ail', Ud, op1, U),
                op2=np.einsum('ij,abjk,kl->abil', Ud, op2, U),
            ))
        np.testing.assert_allclose(rotated, Ud @ original @ U, atol=1e-12)
        np.testing.assert_allclose(original, original.conj().T, atol=1e-15)

    def test_spin_extension(self):
        op1 = np.array([random_hermitian(self.rng) for _ in range(3)])
        orbital = build_effH(EffHSpec(F=self.F, C1=1.0, op1=np.array([np.eye(2)] * 3)))
        Op1 = np.array([np.kron(np.eye(2), np.eye(2))] * 3)
        extended = build_effH(EffHSpec(F=self.F, C1=1.0, spin_dim=2, Op1=Op1, mode=EXPECTATION))
        self.assertEqual(extended.shape, (4, 4))
        np.testing.assert_allclose(extended, np.kron(orbital, np.eye(2)), atol=1e-14)
        with self.assertRaises(InputError):
            EffHSpec(F=self.F, C1=1.0, spin_dim=2, Op1=op1)

    def test_dimension_errors(self):
        with self.assertRaises(InputError):
            EffHSpec(F=np.zeros((3, 3, 3)))
        with self.assertRaises(InputError):
            EffHSpec(F=self.F, C1=1.0)
        with self.assertRaises(InputError):
            EffHSpec(F=self.F, mode='thermal')


class FieldDiscriminationTests(SimpleTestCase):

    def test_magnetic_and_yang_mills_give_complementary_structure(self):
        table = table_report(BerryModel(), ADIABATIC)
        yang_mills = build_effH(EffHSpec(F=flux_tensor(table, YANG_MILLS), C1=1.0, op1=IDENTITY_PER_AXIS))
        magnetic = build_effH(EffHSpec(F=flux_tensor(table, MAGNETIC), C1=1.0, op1=IDENTITY_PER_AXIS))
        self.assertAlmostEqual(yang_mills[0, 0].real, math.pi, delta=1e-3)
        self.assertAlmostEqual(yang_mills[1, 1].real, -math.pi, delta=1e-3)
        self.assertLess(abs(yang_mills[0, 1]), 1e-3)
        self.assertLess(abs(magnetic[0, 0]), 1e-3)
        self.assertAlmostEqual(magnetic[0, 1].real, -math.pi, delta=1e-3)

    def test_unknown_kind(self):
        with self.assertRaises(InputError):
            flux_tensor(None, 'electric')


class EffHSchemaTests(SimpleTestCase):

    def test_pairs_and_numbers(self):
        F = [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, -1.0]]]
        spec = effh_spec_from_dict({'C1': 1.0, 'F': F, 'op1': complex_to_json(IDENTITY_PER_AXIS)})
        np.testing.assert_allclose(build_effH(spec), np.diag([1.0, -1.0]))

    def test_round_trip(self):
        spec = EffHSpec(F=np.ones((3, 2, 2)) * (1 + 2j), C2=0.5, op2=np.zeros((3, 3, 2, 2)))
        again = effh_spec_from_dict(effh_spec_to_dict(spec))
        np.testing.assert_array_equal(again.F, spec.F)
        self.assertEqual(again.C2, 0.5)

    def test_rejects_bad_documents(self):
        with self.assertRaises(ModelParseError):
            effh_spec_from_dict({'F': [[0.0]], 'C1': 0.0})
        with self.assertRaises(ModelParseError):
            effh_spec_from_dict({'F': np.zeros((3, 2, 2)).tolist(), 'extra': 1})
        with self.assertRaises(ModelParseError):
            effh_spec_from_dict({'F': np.zeros((3, 2, 2)).tolist(), 'C1': 1.0})
        with self.assertRaises(ModelParseError):
            effh_spec_from_dict([])
