"""
Analytic sign criteria for the topological phase at a conical intersection.
"""
import logging
import math
from typing import Iterable

import numpy as np

from geophase.exceptions import ContourError, DegeneracyError, InputError
from model_core.config import NumericsConfig
from model_core.hamiltonians import CartesianCoupling, ComplexCoupling
from phase_tracing.loops import LoopSpec
from .ci_points import (
    CARTESIAN_ROOT, DEGENERATE, MINUS, ORIGIN, PLUS, SHIFTED_TRIGONAL, CiPoint,
)

logger = logging.getLogger(__name__)


def _sign_of(value: float, tol: float) -> str:
    if abs(value) < tol:
        return DEGENERATE
    return PLUS if value > 0 else MINUS


def jacobian_sign(model: CartesianCoupling, ci: CiPoint) -> str:
    """Sign of A_X B_Y - B_X A_Y at the intersection"""
    if not isinstance(model, CartesianCoupling):
        raise InputError("jacobian_sign needs a Cartesian coupling model")
    if ci.kind != CARTESIAN_ROOT:
        raise InputError(f"jacobian_sign applies to Cartesian roots, not {ci.kind}")
    x, y = ci.location
    derivatives = [model.A_X(x, y), model.A_Y(x, y), model.B_X(x, y), model.B_Y(x, y)]
    if max(abs(d) for d in derivatives) < NumericsConfig.JACOBIAN_TOLERANCE:
        logger.warning(f"All coupling derivatives vanish at ({x}, {y}); touching intersection")
        return DEGENERATE
    return _sign_of(model.jacobian(x, y), NumericsConfig.JACOBIAN_TOLERANCE)


def winding_sign(model: ComplexCoupling, x: float, y: float) -> str:
    """Orientation of (Re V12, Im V12) around a root, from central differences"""
    h = 1e-6 * max(1.0, math.hypot(x, y))

    def v(px, py):
        return complex(model.v12(math.hypot(px, py), math.atan2(py, px)))

    dx = (v(x + h, y) - v(x - h, y)) / (2 * h)
    dy = (v(x, y + h) - v(x, y - h)) / (2 * h)
    det = dx.real * dy.imag - dy.real * dx.imag
    scale = max(abs(dx), abs(dy)) ** 2
    return _sign_of(det, NumericsConfig.JACOBIAN_TOLERANCE * max(scale, 1e-300))


def trigonal_sign(model: ComplexCoupling, ci: CiPoint) -> str:
    """Sign criterion for origin, trigonal and shifted-trigonal intersections"""
    if ci.kind == CARTESIAN_ROOT:
        raise InputError("trigonal_sign does not apply to Cartesian roots")
    if ci.kind == ORIGIN:
        return MINUS
    params = model.quartic_parameters
    if params is None:
        return winding_sign(model, ci.x, ci.y)
    if ci.kind == SHIFTED_TRIGONAL:
        return MINUS
    mu, lam = params
    q0 = ci.q
    if mu * lam > 0 and abs(q0 - math.sqrt(mu / (3.0 * lam))) < NumericsConfig.DOUBLE_ROOT_TOLERANCE:
        return DEGENERATE
    numerator = 3.0 * mu * q0 + 3.0 * lam * q0 ** 3
    denominator = mu * q0 - 3.0 * lam * q0 ** 3
    if denominator == 0.0 or numerator == 0.0:
        return DEGENERATE
    return PLUS if numerator / denominator > 0 else MINUS


def predicted_loop_phase(cis: Iterable[CiPoint], loop: LoopSpec) -> int:
    """Accumulated phase around a loop, as a signed multiple of pi"""
    total = 0
    for ci in cis:
        distance = loop.distance_to(ci.x, ci.y)
        if abs(distance - loop.radius) <= NumericsConfig.CONTOUR_CLEARANCE:
            raise ContourError(f"{ci} lies on the loop of radius {loop.radius}")
        if distance > loop.radius:
            continue
        if ci.sign is None:
            raise InputError(f"{ci} has not been classified")
        if ci.sign == DEGENERATE:
            raise DegeneracyError(f"Degenerate intersection inside the loop: {ci}", point=ci.location)
        total += ci.sign_value
    return loop.direction * total


def annulus_signs(cis: Iterable[CiPoint], inner: float, outer: float, center=(0.0, 0.0)) -> int:
    """Sum of signs for intersections with inner < distance < outer"""
    cx, cy = center[0], center[1]
    distances = [(float(np.hypot(ci.x - cx, ci.y - cy)), ci) for ci in cis]
    return sum(ci.sign_value for d, ci in distances if inner < d < outer)
