"""
Conical intersection search.

Cartesian models: sign-change cells of (A, B) on a grid, polished by Newton.
Complex models: exact reduction of V12 = 0 to two real cubics plus the
closed-form shifted roots, guarded by a Newton search on a polar grid.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from geophase.exceptions import InputError
from model_core.config import NumericsConfig
from model_core.hamiltonians import CartesianCoupling, ComplexCoupling, polar_point
from .ci_points import (
    CARTESIAN_ROOT, ORIGIN, SHIFTED_TRIGONAL, TRIGONAL_A, TRIGONAL_B, CiPoint,
)
from .signs import jacobian_sign, trigonal_sign

logger = logging.getLogger(__name__)

MIN_GRID = 16
NEWTON_MAX_ITERATIONS = 100
TWO_PI = 2.0 * math.pi

# e^{3i phi} = +1 and -1 azimuth sets
TRIGONAL_A_ANGLES = (0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0)
TRIGONAL_B_ANGLES = (math.pi / 3.0, math.pi, 5.0 * math.pi / 3.0)


def _sign_change(values: np.ndarray) -> np.ndarray:
    """Cells whose four corner values bracket zero"""
    corners = np.stack([values[:-1, :-1], values[1:, :-1], values[:-1, 1:], values[1:, 1:]])
    return (corners.min(axis=0) <= 0.0) & (corners.max(axis=0) >= 0.0)


def _merge(points: List[CiPoint]) -> List[CiPoint]:
    """Drop candidates within MERGE_DISTANCE of one already kept, keeping the smaller residual"""
    kept: List[CiPoint] = []
    for point in sorted(points, key=lambda p: p.residual):
        if all(math.hypot(point.x - k.x, point.y - k.y) > NumericsConfig.MERGE_DISTANCE for k in kept):
            kept.append(point)
    return kept


def _newton_2d(func, jac, start, bounds, scale) -> Optional[Tuple[float, float]]:
    """Newton iteration on a 2D real map; None when it diverges or leaves the bounds"""
    x = np.array(start, dtype=float)
    (xmin, xmax), (ymin, ymax) = bounds
    for _ in range(NEWTON_MAX_ITERATIONS):
        f = np.asarray(func(x[0], x[1]), dtype=float)
        step, *_ = np.linalg.lstsq(np.asarray(jac(x[0], x[1]), dtype=float), -f, rcond=None)
        x = x + step
        if not (np.all(np.isfinite(x)) and xmin <= x[0] <= xmax and ymin <= x[1] <= ymax):
            return None
        if np.max(np.abs(step)) <= 1e-15 * max(1.0, float(np.max(np.abs(x)))):
            break
    f = np.asarray(func(x[0], x[1]), dtype=float)
    if np.max(np.abs(f)) > NumericsConfig.ROOT_RESIDUAL_TOLERANCE * scale:
        return None
    return float(x[0]) + 0.0, float(x[1]) + 0.0


def locate_cartesian_cis(model: CartesianCoupling, region: Sequence[Sequence[float]],
                         grid: Optional[int] = None) -> List[CiPoint]:
    """Roots of A = B = 0 inside region = ((xmin, xmax), (ymin, ymax)), with signs"""
    if not isinstance(model, CartesianCoupling):
        raise InputError("locate_cartesian_cis needs a Cartesian coupling model")
    grid = int(grid or NumericsConfig.get_ci_grid())
    if grid < MIN_GRID:
        raise InputError(f"CI search grid must have at least {MIN_GRID} cells per axis, got {grid}")
    try:
        (xmin, xmax), (ymin, ymax) = [(float(lo), float(hi)) for lo, hi in region]
    except (TypeError, ValueError) as exc:
        raise InputError(f"Region must be ((xmin, xmax), (ymin, ymax)), got {region!r}") from exc
    if not all(map(math.isfinite, (xmin, xmax, ymin, ymax))) or xmin >= xmax or ymin >= ymax:
        raise InputError(f"Region must be a finite, non-empty rectangle, got {region!r}")

    xs = np.linspace(xmin, xmax, grid + 1)
    ys = np.linspace(ymin, ymax, grid + 1)
    X, Y = np.meshgrid(xs, ys, indexing='ij')
    cells = np.argwhere(_sign_change(model.A(X, Y)) & _sign_change(model.B(X, Y)))

    def residual_map(x, y):
        return [model.A(x, y), model.B(x, y)]

    def jacobian_map(x, y):
        return [[model.A_X(x, y), model.A_Y(x, y)], [model.B_X(x, y), model.B_Y(x, y)]]

    hx, hy = xs[1] - xs[0], ys[1] - ys[0]
    bounds = ((xmin - hx, xmax + hx), (ymin - hy, ymax + hy))
    candidates = []
    for i, j in cells:
        start = (0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]))
        root = _newton_2d(residual_map, jacobian_map, start, bounds, model.scale)
        if root is None:
            logger.warning(f"Newton diverged from cell start {start}; candidate dropped")
            continue
        x, y = root
        if not (xmin <= x <= xmax and ymin <= y <= ymax):
            continue
        residual = max(abs(float(model.A(x, y))), abs(float(model.B(x, y))))
        candidates.append(CiPoint(x=x, y=y, kind=CARTESIAN_ROOT, residual=residual))

    cis = sorted(_merge(candidates), key=lambda p: (p.x, p.y))
    cis = [ci.with_sign(jacobian_sign(model, ci)) for ci in cis]
    logger.info(f"Found {len(cis)} Cartesian CI(s) of {model!r} from {len(cells)} candidate cell(s)")
    return cis


def _positive_real_roots(coefficients) -> List[float]:
    """Positive real roots of a real polynomial, Newton-polished"""
    trimmed = P.polytrim(np.asarray(coefficients, dtype=float))
    if trimmed.size < 2:
        return []
    derivative = P.polyder(trimmed)
    roots = []
    for root in P.polyroots(trimmed):
        if abs(root.imag) > 1e-6 * max(1.0, abs(root)) or root.real <= 0.0:
            continue
        q = float(root.real)
        for _ in range(50):
            slope = P.polyval(q, derivative)
            if slope == 0.0:
                break
            dq = P.polyval(q, trimmed) / slope
            q -= dq
            if abs(dq) <= 1e-15 * q:
                break
        if q > 0.0:
            roots.append(q)
    return roots


def _complex_ci(model: ComplexCoupling, q0: float, phi0: float, kind: str) -> CiPoint:
    x, y = polar_point(q0, phi0)
    return CiPoint(x=x, y=y, kind=kind, residual=float(abs(model.v12(q0, phi0))))


def _accept(model: ComplexCoupling, ci: CiPoint) -> bool:
    bound = NumericsConfig.ROOT_RESIDUAL_TOLERANCE * model.scale * max(1.0, ci.q)
    if ci.residual > bound:
        logger.warning(f"Root {ci} fails substitution (|V12| = {ci.residual:.3e} > {bound:.3e}); flagged and dropped")
        return False
    return True


def quartic_roots(model: ComplexCoupling) -> List[CiPoint]:
    """Trigonal and shifted-trigonal roots of the quartic coupling (origin excluded)"""
    mu, lam = model.quartic_parameters
    found = []
    for q0 in _positive_real_roots([1.0, -mu, 0.0, lam]):
        found.extend(_complex_ci(model, q0, phi0, TRIGONAL_A) for phi0 in TRIGONAL_A_ANGLES)
    for q0 in _positive_real_roots([1.0, mu, 0.0, -lam]):
        found.extend(_complex_ci(model, q0, phi0, TRIGONAL_B) for phi0 in TRIGONAL_B_ANGLES)
    if mu * lam < 0.0:
        argument = math.sqrt(lam / (-mu)) / (2.0 * mu)
        if abs(argument) <= 1.0:
            q0 = math.sqrt(-mu / lam)
            base = math.acos(argument) / 3.0
            for k in range(3):
                for mirror in (1.0, -1.0):
                    phi0 = (mirror * base + k * TWO_PI / 3.0) % TWO_PI
                    found.append(_complex_ci(model, q0, phi0, SHIFTED_TRIGONAL))
    return [ci for ci in found if _accept(model, ci)]


def _classify_azimuth(phi0: float) -> str:
    """Kind of a numerically located root from 3 phi0 mod 2pi"""
    wrapped = (3.0 * phi0) % TWO_PI
    if min(wrapped, TWO_PI - wrapped) < 1e-6:
        return TRIGONAL_A
    if abs(wrapped - math.pi) < 1e-6:
        return TRIGONAL_B
    return SHIFTED_TRIGONAL


def polar_grid_roots(model: ComplexCoupling, q_max: float, grid: Optional[int] = None) -> List[CiPoint]:
    """Zeros of the V12 bracket found by Newton from sign-change cells of a polar grid"""
    grid = int(grid or NumericsConfig.get_ci_grid())
    qs = np.linspace(q_max / (4 * grid), q_max, grid + 1)
    phis = np.linspace(0.0, TWO_PI, 3 * grid + 1)
    Q, PHI = np.meshgrid(qs, phis, indexing='ij')
    values = model.bracket(Q, PHI)
    cells = np.argwhere(_sign_change(values.real) & _sign_change(values.imag))

    def residual_map(x, y):
        g = complex(model.bracket(math.hypot(x, y), math.atan2(y, x)))
        return [g.real, g.imag]

    def jacobian_map(x, y):
        h = 1e-7 * max(1.0, math.hypot(x, y))
        fx = (np.subtract(residual_map(x + h, y), residual_map(x - h, y))) / (2 * h)
        fy = (np.subtract(residual_map(x, y + h), residual_map(x, y - h))) / (2 * h)
        return np.column_stack([fx, fy])

    limit = 1.5 * q_max
    bounds = ((-limit, limit), (-limit, limit))
    candidates = []
    for i, j in cells:
        start = polar_point(0.5 * (qs[i] + qs[i + 1]), 0.5 * (phis[j] + phis[j + 1]))
        root = _newton_2d(residual_map, jacobian_map, start, bounds, 1.0)
        if root is None:
            logger.debug(f"Polar Newton diverged from {start}; candidate dropped")
            continue
        q0 = math.hypot(*root)
        if q0 <= NumericsConfig.MERGE_DISTANCE or q0 > q_max:
            continue
        phi0 = math.atan2(root[1], root[0]) % TWO_PI
        candidates.append(_complex_ci(model, q0, phi0, _classify_azimuth(phi0)))
    return [ci for ci in _merge(candidates) if _accept(model, ci)]


def _ordering(ci: CiPoint):
    return round(ci.q, 9), round(ci.phi, 9)


def locate_complex_cis(model: ComplexCoupling, q_max: Optional[float] = None) -> List[CiPoint]:
    """Origin plus every positive-radius root of V12, ordered by q0 then phi0, with signs"""
    if not isinstance(model, ComplexCoupling):
        raise InputError("locate_complex_cis needs a complex coupling model")
    if q_max is not None and not q_max > 0:
        raise InputError(f"q_max must be positive, got {q_max}")

    origin = CiPoint(x=0.0, y=0.0, kind=ORIGIN, residual=0.0)
    if model.quartic_parameters is not None:
        roots = quartic_roots(model)
        reach = max([ci.q for ci in roots] + [NumericsConfig.get_ci_search_radius() / 1.5])
        guard_radius = q_max if q_max is not None else 1.5 * reach
        guard = polar_grid_roots(model, guard_radius)
        missed = [g for g in guard if all(
            math.hypot(g.x - r.x, g.y - r.y) > NumericsConfig.MERGE_DISTANCE for r in roots)]
        for ci in missed:
            logger.warning(f"Polar search found a root missed by the cubic reduction: {ci}")
        roots = roots + missed
    else:
        roots = polar_grid_roots(model, q_max or NumericsConfig.get_ci_search_radius())

    if q_max is not None:
        roots = [ci for ci in roots if ci.q <= q_max]
    cis = [origin] + sorted(_merge(roots), key=_ordering)
    cis = [ci.with_sign(trigonal_sign(model, ci)) for ci in cis]
    logger.info(f"Found {len(cis)} CI(s) of {model!r}")
    return cis
