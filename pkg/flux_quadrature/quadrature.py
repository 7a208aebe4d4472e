"""
Line integrals of A = i tau around the seam and fluxes of H and F through
discs centred on it.

All four matrix elements are integrated together with scipy's vector-valued
adaptive quadrature; the complex 2x2 matrix travels as a real 8-vector.
Contours are circles q = const, Z = const in the standard frame (the frame
where b multiplies the seam coordinate).
"""
import logging
import math

import numpy as np
from scipy.integrate import quad_vec

from geophase.exceptions import InputError, ToleranceError
from gauge_fields.fields import FIELD_KINDS, gauge_field, nact, seam_limit
from model_core.config import NumericsConfig
from model_core.hamiltonians import BerryModel
from model_core.states import ADIABATIC, CIRCULATING, REPRESENTATIONS

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

ELEMENT_LABELS = {
    ADIABATIC: {'11': (0, 0), '12': (0, 1), '21': (1, 0), '22': (1, 1)},
    CIRCULATING: {'++': (0, 0), '+-': (0, 1), '-+': (1, 0), '--': (1, 1)},
}

# Infinite discs are cut at this multiple of bZ and closed with a tail estimate
TRUNCATION_FACTOR = 1e3
MIN_TRUNCATION_SCALE = 1e-12

# the outer azimuthal pass integrates inner quadrature results
OUTER_LOOSENESS = 10.0


def element_index(representation: str, element):
    """
    Resolve '12' / '+-' style labels or 1-based (i, j) pairs to 0-based indices.
    """
    if representation not in REPRESENTATIONS:
        raise InputError(f"Unknown representation {representation!r}")
    labels = ELEMENT_LABELS[representation]
    if isinstance(element, str):
        if element not in labels:
            raise InputError(f"Unknown {representation} element {element!r}; expected one of {list(labels)}")
        return labels[element]
    try:
        i, j = (int(v) for v in element)
    except (TypeError, ValueError):
        raise InputError(f"Element must be a label or an (i, j) pair, got {element!r}")
    if i not in (1, 2) or j not in (1, 2):
        raise InputError(f"Element indices must be 1 or 2, got {element!r}")
    return i - 1, j - 1


def element_label(representation: str, i: int, j: int) -> str:
    for label, index in ELEMENT_LABELS[representation].items():
        if index == (i, j):
            return label
    raise InputError(f"No element ({i}, {j})")


def _pack(matrix: np.ndarray) -> np.ndarray:
    return np.concatenate([matrix.real.ravel(), matrix.imag.ravel()])


def _unpack(vector: np.ndarray) -> np.ndarray:
    return (vector[:4] + 1j * vector[4:]).reshape(2, 2)


def _integrate(func, a: float, b: float, points=None, what: str = 'integral', looseness: float = 1.0) -> np.ndarray:
    """quad_vec of a matrix-valued func; non-convergence is a ToleranceError"""
    tol = looseness * NumericsConfig.get_quad_tolerance()
    result, error, info = quad_vec(
        lambda x: _pack(func(x)), a, b,
        epsabs=tol, epsrel=tol, points=points, full_output=True,
    )
    if not info.success:
        logger.error(f"Quadrature of the {what} on [{a:g}, {b:g}] failed: {info.message} (error {error:.3e})")
        raise ToleranceError(f"Quadrature of the {what} did not converge: error estimate {error:.3e}")
    return _unpack(result)


def _resolve(model, representation: str, b=None) -> BerryModel:
    if not isinstance(model, BerryModel):
        raise InputError(f"Fluxes are defined for the Berry model family, not {type(model).__name__}")
    if representation not in REPRESENTATIONS:
        raise InputError(f"Unknown representation {representation!r}")
    if b is not None:
        model = model.with_b(b)
    if model.b == 0.0:
        raise InputError("b = 0 is not allowed; evaluate a b-sequence and take the limit")
    return model


def _model_point(model: BerryModel, q: float, phi: float, z: float) -> np.ndarray:
    return model.to_model_frame(np.array([q * math.cos(phi), q * math.sin(phi), z]))


def _is_axial(model: BerryModel) -> bool:
    # circular models: every cylindrical component is independent of phi
    return model.alpha == model.beta


# ─── Line integrals ─────────────────────────────────────────────

def line_matrix(model, representation: str, circle, b=None) -> np.ndarray:
    """Counter-clockwise integral of A = i tau over the circle (q, Z), all elements"""
    model = _resolve(model, representation, b)
    q, z = (float(v) for v in circle)
    if not q > 0:
        raise InputError(f"Circle radius must be positive, got {q}")

    def integrand(phi):
        tau = nact(model, representation, _model_point(model, q, phi, z))
        return 1j * tau.regular[:, :, 1] * q

    if _is_axial(model):
        return TWO_PI * integrand(0.0)
    return _integrate(integrand, 0.0, TWO_PI, what='line integral')


def line_integral(model, representation: str, element, circle, b=None) -> complex:
    i, j = element_index(representation, element)
    return complex(line_matrix(model, representation, circle, b)[i, j])


# ─── Surface fluxes ─────────────────────────────────────────────

def seam_flux_matrix(model, representation: str, kind: str, z: float) -> np.ndarray:
    """Integral over phi of lim q -> 0+ of q times the seam coefficient"""

    def integrand(phi):
        return seam_limit(gauge_field(model, representation, kind, _model_point(model, 1.0, phi, z)))

    if _is_axial(model):
        return TWO_PI * integrand(0.0)
    return _integrate(integrand, 0.0, TWO_PI, what='seam term')


def _radial_breakpoints(model: BerryModel, z: float, upper: float):
    scale = abs(model.b * z)
    if scale == 0.0:
        return None
    lo, hi = min(model.alpha, model.beta), max(model.alpha, model.beta)
    candidates = {scale / hi, scale / lo, 10.0 * scale / lo, 100.0 * scale / lo}
    points = sorted(p for p in candidates if 0.0 < p < upper)
    return points or None


def _regular_density(model, representation, kind, z):
    """q times the regular Z-hat component, as a function of (q, phi)"""

    def density(q, phi):
        if q <= 0.0:
            return np.zeros((2, 2), dtype=complex)
        field = gauge_field(model, representation, kind, _model_point(model, q, phi, z))
        return field.regular[:, :, 2] * q

    return density


def _azimuthal(density, q: float, axial: bool) -> np.ndarray:
    if axial:
        return TWO_PI * density(q, 0.0)
    return _integrate(lambda phi: density(q, phi), 0.0, TWO_PI, what='azimuthal integrand')


def _tail_estimate(density, q_top: float, axial: bool) -> np.ndarray:
    """Tail beyond q_top from the local power-law decay g(q) ~ q^-p of the azimuthal integral"""
    near = _azimuthal(density, 0.5 * q_top, axial)
    far = _azimuthal(density, q_top, axial)
    tail = np.zeros((2, 2), dtype=complex)
    floor = NumericsConfig.get_quad_tolerance() / q_top
    for index in np.ndindex(2, 2):
        for part in (np.real, np.imag):
            g_near, g_far = float(part(near[index])), float(part(far[index]))
            if abs(g_far) <= floor:
                continue
            if g_near * g_far <= 0:
                raise ToleranceError(f"Radial integrand changes sign near the truncation radius {q_top:g}")
            power = math.log(g_near / g_far) / math.log(2.0)
            if power <= 1.0:
                raise ToleranceError(f"Radial integrand decays as q^-{power:.2f}; the flux does not converge")
            value = g_far * q_top / (power - 1.0)
            tail[index] += value if part is np.real else 1j * value
    return tail


def regular_flux_matrix(model, representation: str, kind: str, disc) -> np.ndarray:
    q_max, z = (float(v) for v in disc)
    density = _regular_density(model, representation, kind, z)
    axial = _is_axial(model)
    infinite = math.isinf(q_max)
    q_top = TRUNCATION_FACTOR * max(abs(model.b * z), MIN_TRUNCATION_SCALE) if infinite else q_max
    points = _radial_breakpoints(model, z, q_top)

    def radial(phi):
        return _integrate(lambda q: density(q, phi), 0.0, q_top, points=points, what='radial integrand')

    flux = TWO_PI * radial(0.0) if axial else _integrate(
        radial, 0.0, TWO_PI, what='regular flux', looseness=OUTER_LOOSENESS,
    )
    if infinite:
        flux = flux + _tail_estimate(density, q_top, axial)
    return flux


def flux_matrix(model, representation: str, kind: str, disc, b=None) -> np.ndarray:
    """Seam term plus regular term of the flux of H or F through the disc (q_max, Z)"""
    model = _resolve(model, representation, b)
    if kind not in FIELD_KINDS:
        raise InputError(f"Unknown field kind {kind!r}")
    q_max, z = (float(v) for v in disc)
    if not q_max > 0:
        raise InputError(f"Disc radius must be positive, got {q_max}")
    seam = seam_flux_matrix(model, representation, kind, z)
    regular = regular_flux_matrix(model, representation, kind, (q_max, z))
    logger.debug(f"{kind} flux of {model!r} through ({q_max:g}, {z:g}): seam {seam.tolist()}, regular {regular.tolist()}")
    return seam + regular


def surface_flux(model, representation: str, element, kind: str, disc, b=None) -> complex:
    i, j = element_index(representation, element)
    return complex(flux_matrix(model, representation, kind, disc, b)[i, j])
