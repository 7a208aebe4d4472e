"""
Gauge-fixed adiabatic states of the Berry family and the circulating
representation built from them.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from geophase.exceptions import DegeneracyError, InputError, RepresentationError
from .config import NumericsConfig
from .hamiltonians import BerryModel

logger = logging.getLogger(__name__)

ADIABATIC = 'adiabatic'
CIRCULATING = 'circulating'
REPRESENTATIONS = (ADIABATIC, CIRCULATING)

SQRT_HALF = 1.0 / math.sqrt(2.0)

# Diabatic-basis change relating the Y_carries_b formalism to the standard one
ALT_BASIS = SQRT_HALF * np.array([[1.0, 1j], [1j, 1.0]])


def circulating_unitary() -> np.ndarray:
    """Columns give |+) and |-) in the (|1>, |2>) basis"""
    return SQRT_HALF * np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class SpinorPair:
    """Two orthonormal spinors; rows of `states` are |1>, |2> or |+), |-)"""
    states: np.ndarray
    point: Tuple[float, ...]
    representation: str = ADIABATIC

    @property
    def upper(self) -> np.ndarray:
        self._require(ADIABATIC)
        return self.states[0]

    @property
    def lower(self) -> np.ndarray:
        self._require(ADIABATIC)
        return self.states[1]

    @property
    def plus(self) -> np.ndarray:
        self._require(CIRCULATING)
        return self.states[0]

    @property
    def minus(self) -> np.ndarray:
        self._require(CIRCULATING)
        return self.states[1]

    def _require(self, representation):
        if self.representation != representation:
            raise RepresentationError(
                f"SpinorPair is {self.representation}, expected {representation}"
            )

    def overlaps(self) -> np.ndarray:
        """Gram matrix <i|j>"""
        return self.states.conj() @ self.states.T

    def is_orthonormal(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.overlaps() - np.eye(2))) <= tol)


def half_angle_spinors(theta: float, phi: float) -> np.ndarray:
    """Rows (e^{-i phi/2} cos(theta/2), e^{i phi/2} sin(theta/2)) and (-e^{-i phi/2} sin, e^{i phi/2} cos)"""
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    em, ep = np.exp(-0.5j * phi), np.exp(0.5j * phi)
    return np.array([[em * c, ep * s],
                     [-em * s, ep * c]], dtype=complex)


def adiabatic_states(model: BerryModel, point) -> SpinorPair:
    """Eigenvectors |1> (energy +R_b) and |2> (energy -R_b) in the half-angle gauge"""
    if not isinstance(model, BerryModel):
        raise InputError("Adiabatic states are defined for the Berry model family")
    if model.b == 0.0:
        raise InputError("b = 0 is not allowed; evaluate a b-sequence and take the limit")
    geometry = model.geometry(point)
    if geometry.R <= NumericsConfig.DEGENERACY_TOLERANCE:
        raise DegeneracyError(f"R_b = 0 at {tuple(point)}", point=tuple(point))
    states = half_angle_spinors(geometry.theta, geometry.phi_prime)
    if model.is_alternative:
        states = states @ ALT_BASIS.T
    return SpinorPair(states=states, point=tuple(float(v) for v in point))


def continuous_adiabatic_states(model: BerryModel, points) -> np.ndarray:
    """
    Half-angle states along a path with phi' unwrapped, shape (n, 2, 2).
    Successive samples must be close enough for the unwrap to follow the path.
    """
    if model.b == 0.0:
        raise InputError("b = 0 is not allowed; evaluate a b-sequence and take the limit")
    geometries = [model.geometry(point) for point in points]
    if any(g.R <= NumericsConfig.DEGENERACY_TOLERANCE for g in geometries):
        raise DegeneracyError("R_b = 0 on the path", point=None)
    phis = np.unwrap([g.phi_prime for g in geometries])
    states = np.array([half_angle_spinors(g.theta, phi) for g, phi in zip(geometries, phis)])
    if model.is_alternative:
        states = states @ ALT_BASIS.T
    return states


def monopole_states(R: float, theta: float, phi: float) -> SpinorPair:
    """psi_u and psi_l of H = (X sx + Y sy + Z sz) / 2 at spherical (R, theta, phi)"""
    if R <= 0:
        raise DegeneracyError("Monopole states are undefined at R = 0", point=(R, theta, phi))
    point = (R * math.sin(theta) * math.cos(phi), R * math.sin(theta) * math.sin(phi), R * math.cos(theta))
    return SpinorPair(states=half_angle_spinors(theta, phi), point=point)


def to_circulating(states: SpinorPair) -> SpinorPair:
    """|+) = (|1> + |2>)/sqrt2, |-) = (|1> - |2>)/sqrt2"""
    if states.representation != ADIABATIC:
        raise RepresentationError("to_circulating expects adiabatic states")
    rotated = circulating_unitary().T @ states.states
    return SpinorPair(states=rotated, point=states.point, representation=CIRCULATING)


def from_circulating(states: SpinorPair) -> SpinorPair:
    """Inverse of to_circulating"""
    if states.representation != CIRCULATING:
        raise RepresentationError("from_circulating expects circulating states")
    restored = circulating_unitary().conj() @ states.states
    return SpinorPair(states=restored, point=states.point, representation=ADIABATIC)
