"""
Finite-difference oracles for the closed-form fields.
"""
import logging

import numpy as np

from geophase.exceptions import InputError, StepError
from model_core.hamiltonians import ALT_FRAME, as_point
from model_core.states import ADIABATIC, CIRCULATING, circulating_unitary, continuous_adiabatic_states
from .fields import MAGNETIC, GaugeTensor, NactField, field_geometry, nact
from .vectors import cartesian_to_cylindrical

logger = logging.getLogger(__name__)

MIN_STEP_OVERLAP = 0.9


def _to_standard_cylindrical(model, cartesian: np.ndarray, phi: float) -> np.ndarray:
    """Model-axis Cartesian components -> cylindrical components of the standard frame"""
    standard = cartesian @ ALT_FRAME.T if model.is_alternative else cartesian
    return cartesian_to_cylindrical(standard, phi)


def nact_numeric(model, representation: str, point, h: float = 1e-5) -> NactField:
    """Central-difference <i|grad|j> of the gauge-fixed states"""
    g = field_geometry(model, point)
    if g.q <= 2 * h:
        raise InputError(f"Step {h} too large for q = {g.q}")
    p = as_point(point, 3)
    derivative = np.zeros((2, 2, 3), dtype=complex)
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        triple = continuous_adiabatic_states(model, [p - offset, p, p + offset])
        if representation == CIRCULATING:
            triple = np.einsum('ji,njk->nik', circulating_unitary(), triple)
        elif representation != ADIABATIC:
            raise InputError(f"Unknown representation {representation!r}")
        center = triple[1]
        for neighbour in (triple[0], triple[2]):
            overlap = np.abs(np.einsum('ij,ij->i', center.conj(), neighbour))
            if np.min(overlap) < MIN_STEP_OVERLAP:
                raise StepError(f"Gauge discontinuity across step {h} along axis {axis} at {tuple(p)}")
        slope = (triple[2] - triple[0]) / (2.0 * h)
        derivative[:, :, axis] = center.conj() @ slope.T
    return NactField(
        regular=_to_standard_cylindrical(model, derivative, g.phi),
        seam=np.zeros((2, 2, 3), dtype=complex),
        representation=representation, model=model, geometry=g,
    )


def magnetic_numeric(model, representation: str, point, h: float = 1e-5) -> GaugeTensor:
    """Numerical curl of the closed-form connection A = i tau (regular part only)"""
    g = field_geometry(model, point)
    if g.q <= 2 * h:
        raise InputError(f"Step {h} too large for q = {g.q}")
    p = as_point(point, 3)
    d = []
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        forward = 1j * nact(model, representation, p + offset).cartesian()
        backward = 1j * nact(model, representation, p - offset).cartesian()
        d.append((forward - backward) / (2.0 * h))
    curl = np.stack([
        d[1][:, :, 2] - d[2][:, :, 1],
        d[2][:, :, 0] - d[0][:, :, 2],
        d[0][:, :, 1] - d[1][:, :, 0],
    ], axis=-1)
    return GaugeTensor(
        regular=_to_standard_cylindrical(model, curl, g.phi),
        seam=np.zeros((2, 2, 3), dtype=complex),
        representation=representation, model=model, geometry=g, kind=MAGNETIC,
    )
