"""
Closed-form NACT, magnetic and Yang-Mills fields of the Berry model family.

Every field is a 2x2 matrix of complex 3-vectors in the cylindrical basis
(q-hat, phi-hat, Z-hat) of the frame where b multiplies the seam coordinate,
split into a regular part and the coefficient of delta(q) on the seam.
"""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from geophase.exceptions import InputError, RepresentationError, SeamError
from model_core.hamiltonians import ALT_FRAME, BerryGeometry, BerryModel
from model_core.states import ADIABATIC, REPRESENTATIONS, circulating_unitary
from .vectors import CYLINDRICAL, Vec3C, cylindrical_to_cartesian

logger = logging.getLogger(__name__)

MAGNETIC = 'magnetic'
YANG_MILLS = 'yang_mills'
FIELD_KINDS = (MAGNETIC, YANG_MILLS)


class AngleGradients(NamedTuple):
    """Cylindrical components of the angle derivatives entering every field"""
    grad_phi: np.ndarray
    grad_theta: np.ndarray
    wedge: np.ndarray
    curl_seam: np.ndarray


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    regular: np.ndarray
    seam: np.ndarray
    representation: str
    model: BerryModel
    geometry: BerryGeometry

    @property
    def point(self):
        return self.geometry.x, self.geometry.y, self.geometry.z

    def element(self, i: int, j: int, part: str = 'regular') -> Vec3C:
        values = self.regular if part == 'regular' else self.seam
        return Vec3C(values[i, j], CYLINDRICAL, self.geometry.phi)

    def cartesian(self, part: str = 'regular') -> np.ndarray:
        """(2, 2, 3) Cartesian components along the model's own axes"""
        values = self.regular if part == 'regular' else self.seam
        standard = cylindrical_to_cartesian(values, self.geometry.phi)
        return standard @ ALT_FRAME if self.model.is_alternative else standard


@dataclass(frozen=True, eq=False)
class NactField(FieldMatrix):
    """tau_ij = <i|grad|j>; A = i tau"""

    def is_anti_hermitian(self, tol: float = 1e-12) -> bool:
        return all(
            np.max(np.abs(part + np.conj(np.swapaxes(part, 0, 1)))) <= tol
            for part in (self.regular, self.seam)
        )


@dataclass(frozen=True, eq=False)
class GaugeTensor(FieldMatrix):
    kind: str = MAGNETIC

    def seam_profile(self) -> np.ndarray:
        """q times the Z-hat seam coefficient, i.e. the angular weight of delta(q)/q"""
        return self.geometry.q * self.seam[:, :, 2]


def field_geometry(model, point, allow_seam: bool = False) -> BerryGeometry:
    if not isinstance(model, BerryModel):
        raise InputError(f"Gauge fields are defined for the Berry model family, not {type(model).__name__}")
    if model.b == 0.0:
        raise InputError("b = 0 is not allowed; evaluate a b-sequence and take the limit")
    geometry = model.geometry(point)
    if geometry.q == 0.0 and not allow_seam:
        raise SeamError(f"Regular field parts are undefined on the seam at {tuple(point)}")
    return geometry


def _check_representation(representation: str):
    if representation not in REPRESENTATIONS:
        raise InputError(f"Unknown representation {representation!r}")


def _rho2(model: BerryModel, phi: float) -> float:
    return (model.alpha * math.cos(phi)) ** 2 + (model.beta * math.sin(phi)) ** 2


def change_representation(values: np.ndarray, representation: str) -> np.ndarray:
    """U^dagger X U per vector component (U constant, so no inhomogeneous term)"""
    if representation == ADIABATIC:
        return values
    U = circulating_unitary()
    return np.einsum('ai,abk,bj->ijk', U.conj(), values, U)


def angle_gradients(model: BerryModel, point) -> AngleGradients:
    g = field_geometry(model, point)
    a, be, b = model.alpha, model.beta, model.b
    R2 = g.R ** 2
    grad_phi = np.array([0.0, a * be * g.q / g.q_prime ** 2, 0.0])
    grad_theta = np.array([
        b * g.z * g.q_prime / (g.q * R2),
        -b * g.z * g.q * (a * a - be * be) * math.sin(2.0 * g.phi) / (2.0 * g.q_prime * R2),
        -b * g.q_prime / R2,
    ])
    wedge_values = np.array([
        b * a * be * g.q / (g.q_prime * R2),
        0.0,
        b * g.z * a * be / (g.q_prime * R2),
    ])
    curl_seam = np.array([0.0, 0.0, a * be * g.q / g.q_prime ** 2])
    return AngleGradients(grad_phi, grad_theta, wedge_values, curl_seam)


def _nact_seam(model: BerryModel, g: BerryGeometry) -> np.ndarray:
    """b -> 0 content of tau concentrated on the seam (Lorentzian limits)"""
    s = float(np.sign(model.b * g.z))
    rho2 = _rho2(model, g.phi)
    a, be = model.alpha, model.beta
    seam = np.zeros((2, 2, 3), dtype=complex)
    seam[0, 0] = [0.0, -0.5j * math.pi * s * a * be / rho2, 0.0]
    seam[1, 1] = -seam[0, 0]
    seam[0, 1] = [-0.5 * math.pi * s, 0.25 * math.pi * s * (a * a - be * be) * math.sin(2.0 * g.phi) / rho2, 0.0]
    seam[1, 0] = -np.conj(seam[0, 1])
    return seam


def nact(model: BerryModel, representation: str, point, seam_only: bool = False) -> NactField:
    _check_representation(representation)
    g = field_geometry(model, point, allow_seam=seam_only)
    regular = np.zeros((2, 2, 3), dtype=complex)
    if not seam_only:
        grads = angle_gradients(model, point)
        cos_t, sin_t = math.cos(g.theta), math.sin(g.theta)
        regular[0, 0] = -0.5j * cos_t * grads.grad_phi
        regular[1, 1] = -regular[0, 0]
        regular[0, 1] = 0.5j * sin_t * grads.grad_phi - 0.5 * grads.grad_theta
        regular[1, 0] = 0.5j * sin_t * grads.grad_phi + 0.5 * grads.grad_theta
    return NactField(
        regular=change_representation(regular, representation),
        seam=change_representation(_nact_seam(model, g), representation),
        representation=representation, model=model, geometry=g,
    )


def magnetic_field(model: BerryModel, representation: str, point) -> GaugeTensor:
    """H = curl(i tau); the curl of grad(phi') appears only as a seam coefficient"""
    _check_representation(representation)
    g = field_geometry(model, point)
    grads = angle_gradients(model, point)
    cos_t, sin_t = math.cos(g.theta), math.sin(g.theta)
    regular = np.zeros((2, 2, 3), dtype=complex)
    seam = np.zeros((2, 2, 3), dtype=complex)
    regular[0, 0] = -0.5 * sin_t * grads.wedge
    regular[1, 1] = -regular[0, 0]
    regular[0, 1] = regular[1, 0] = -0.5 * cos_t * grads.wedge
    seam[0, 0] = 0.5 * cos_t * grads.curl_seam
    seam[1, 1] = -seam[0, 0]
    seam[0, 1] = seam[1, 0] = -0.5 * sin_t * grads.curl_seam
    return GaugeTensor(
        regular=change_representation(regular, representation),
        seam=change_representation(seam, representation),
        representation=representation, model=model, geometry=g, kind=MAGNETIC,
    )


def wedge(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """(left ^ right)_ij = sum_k left_ik x right_kj"""
    return sum(np.cross(left[:, k, None, :], right[None, k, :, :]) for k in range(2))


def yang_mills_field(model: BerryModel, representation: str, point) -> GaugeTensor:
    """F = H + i tau ^ tau, built in the adiabatic representation and rotated covariantly"""
    _check_representation(representation)
    tau = nact(model, ADIABATIC, point)
    H = magnetic_field(model, ADIABATIC, point)
    regular = H.regular + 1j * wedge(tau.regular, tau.regular)
    return GaugeTensor(
        regular=change_representation(regular, representation),
        seam=change_representation(H.seam, representation),
        representation=representation, model=model, geometry=H.geometry, kind=YANG_MILLS,
    )


def gauge_field(model: BerryModel, representation: str, kind: str, point) -> GaugeTensor:
    if kind == MAGNETIC:
        return magnetic_field(model, representation, point)
    if kind == YANG_MILLS:
        return yang_mills_field(model, representation, point)
    raise InputError(f"Unknown field kind {kind!r}")


def seam_limit(tensor: GaugeTensor) -> np.ndarray:
    """
    lim q -> 0+ of q times the Z-hat seam coefficient at the tensor's azimuth and Z.

    The off-diagonal adiabatic elements carry sin(theta') -> 0 at finite b, so
    their q delta(q) content is exactly zero.
    """
    if not isinstance(tensor, GaugeTensor):
        raise RepresentationError("seam_limit expects a magnetic or Yang-Mills tensor")
    model, g = tensor.model, tensor.geometry
    weight = 0.5 * float(np.sign(model.b * g.z)) * model.alpha * model.beta / _rho2(model, g.phi)
    limit = np.zeros((2, 2, 1), dtype=complex)
    limit[0, 0, 0], limit[1, 1, 0] = weight, -weight
    return change_representation(limit, tensor.representation)[:, :, 0]
