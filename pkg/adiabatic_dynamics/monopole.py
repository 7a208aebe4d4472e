"""
Berry phases of H = (X sx + Y sy + Z sz) / 2 for contours at constant polar
angle, in closed form and by quadrature of the expectation value of grad H
over the enclosed spherical cap.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from geophase.exceptions import InputError, ToleranceError
from model_core.states import monopole_states

logger = logging.getLogger(__name__)

LOWER = 'lower'
UPPER = 'upper'
MONOPOLE_STATES = (LOWER, UPPER)

PAULI = np.array([
    [[0.0, 1.0], [1.0, 0.0]],
    [[0.0, -1j], [1j, 0.0]],
    [[1.0, 0.0], [0.0, -1.0]],
])

CAP_TOLERANCE = 1e-8
DEFAULT_NODES = 24
AZIMUTH_POINTS = 16


@dataclass(frozen=True)
class Monopole3D:
    theta_cap: float
    R: float = 1.0

    def __post_init__(self):
        if not self.R > 0:
            raise InputError(f"R must be positive, got {self.R}")
        if not 0.0 <= self.theta_cap <= math.pi:
            raise InputError(f"theta_cap must lie in [0, pi], got {self.theta_cap}")


def _check_state(state: str):
    if state not in MONOPOLE_STATES:
        raise InputError(f"Unknown monopole state {state!r}; expected one of {MONOPOLE_STATES}")


def berry3d_phase(cap: Monopole3D, state: str) -> float:
    _check_state(state)
    gamma = (1.0 - math.cos(cap.theta_cap)) * math.pi
    return -gamma if state == LOWER else gamma


def grad_h_expectation(R: float, theta: float, phi: float, state: str) -> np.ndarray:
    """<psi| grad_R H |psi> = <psi| sigma |psi> / 2 as a Cartesian vector"""
    pair = monopole_states(R, theta, phi)
    psi = pair.lower if state == LOWER else pair.upper
    return 0.5 * np.real(np.einsum('i,kij,j->k', psi.conj(), PAULI, psi))


def _cap_quadrature(cap: Monopole3D, state: str, nodes: int) -> float:
    # Gauss-Legendre in u = cos(theta) on [cos(theta_cap), 1], trapezoid in phi
    x, weights = np.polynomial.legendre.leggauss(nodes)
    lower = math.cos(cap.theta_cap)
    u = 0.5 * (1.0 - lower) * x + 0.5 * (1.0 + lower)
    weights = 0.5 * (1.0 - lower) * weights
    phis = 2.0 * math.pi * np.arange(AZIMUTH_POINTS) / AZIMUTH_POINTS
    total = 0.0
    for u_k, w_k in zip(u, weights):
        theta = math.acos(min(1.0, max(-1.0, u_k)))
        sin_t = math.sin(theta)
        ring = 0.0
        for phi in phis:
            normal = np.array([sin_t * math.cos(phi), sin_t * math.sin(phi), u_k])
            # dS / R^2 = dOmega along the outward normal
            ring += grad_h_expectation(cap.R, theta, phi, state) @ normal
        total += w_k * ring * (2.0 * math.pi / AZIMUTH_POINTS)
    return total


def berry3d_surface_integral(cap: Monopole3D, state: str, nodes: int = DEFAULT_NODES) -> float:
    _check_state(state)
    if cap.theta_cap == 0.0:
        return 0.0
    coarse = _cap_quadrature(cap, state, nodes)
    fine = _cap_quadrature(cap, state, 2 * nodes)
    if abs(fine - coarse) > CAP_TOLERANCE:
        logger.error(f"Cap quadrature at theta_cap={cap.theta_cap} not converged: {coarse} vs {fine}")
        raise ToleranceError(f"Cap quadrature changed by {abs(fine - coarse):.3e} on refinement")
    return fine
