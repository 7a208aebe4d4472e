"""
Continuous phase tracing around circular loops.

trace_phase follows the mixing angle of a 2D coupling model sample by sample;
overlap_phase accumulates the discrete Berry phase of the gauge-fixed Berry
model states.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ci_analysis.ci_points import DEGENERATE, MINUS, PLUS
from geophase.exceptions import (
    ClosureError, ContourError, DegeneracyError, InputError, UndersampledError,
)
from model_core.config import NumericsConfig
from model_core.hamiltonians import BerryModel, CartesianCoupling, ComplexCoupling
from model_core.states import (
    ADIABATIC, CIRCULATING, circulating_unitary, continuous_adiabatic_states,
)
from .loops import LoopSpec

logger = logging.getLogger(__name__)

MAX_CONTINUED_STEP = math.pi / 4
MIN_OVERLAP = 0.5
SIGN_OFFSET = 1e-4


@dataclass(frozen=True, eq=False)
class PhaseTrace:
    alphas: np.ndarray
    theta_track: np.ndarray
    total_phase: float
    winding: int

    @property
    def samples(self) -> int:
        return self.alphas.size - 1

    @property
    def partial_phase(self) -> np.ndarray:
        return self.theta_track - self.theta_track[0]


def mixing_angles(model, points: np.ndarray) -> np.ndarray:
    """Vectorised mixing angle over an (n, 2) array of points"""
    x, y = points[:, 0], points[:, 1]
    if isinstance(model, CartesianCoupling):
        first, second = model.A(x, y), model.B(x, y)
        bound = NumericsConfig.DEGENERACY_TOLERANCE * model.scale
    elif isinstance(model, ComplexCoupling):
        q = np.hypot(x, y)
        v = model.v12(q, np.arctan2(y, x))
        first, second = v.real, v.imag
        bound = NumericsConfig.DEGENERACY_TOLERANCE * model.scale * np.maximum(1.0, q)
    else:
        raise InputError(f"Phase tracing needs a 2D coupling model, not {type(model).__name__}")
    degenerate = np.hypot(first, second) <= bound
    if np.any(degenerate):
        where = tuple(points[np.argmax(degenerate)])
        raise DegeneracyError(f"Coupling vanishes at {where}", point=where)
    return 0.5 * np.arctan2(second, first)


def continue_branch(thetas: np.ndarray) -> np.ndarray:
    """Steps of a mod-pi angle continued to the representative closest to zero"""
    steps = np.diff(thetas)
    return steps - math.pi * np.round(steps / math.pi)


def _trace_once(model, loop: LoopSpec) -> PhaseTrace:
    alphas = loop.alphas()
    try:
        thetas = mixing_angles(model, loop.points(alphas)[:, :2])
    except DegeneracyError as exc:
        raise ContourError(f"Degeneracy on the contour at {exc.point}") from exc
    steps = continue_branch(thetas)
    worst = float(np.max(np.abs(steps)))
    if worst > MAX_CONTINUED_STEP:
        raise UndersampledError(
            f"Mixing angle step {worst:.3f} exceeds pi/4 with N={loop.samples}; raise the sample count"
        )
    track = thetas[0] + np.concatenate([[0.0], np.cumsum(steps)])
    total = float(track[-1] - track[0])
    winding = int(round(total / math.pi))
    if abs(total - winding * math.pi) > NumericsConfig.CLOSURE_TOLERANCE * math.pi:
        raise ClosureError(f"Loop phase {total} is not a multiple of pi")
    return PhaseTrace(alphas=alphas, theta_track=track, total_phase=total, winding=winding)


def trace_phase(model, loop: LoopSpec, auto_refine: bool = True) -> PhaseTrace:
    """Accumulated mixing-angle change around the loop, doubling N while undersampled"""
    cap = NumericsConfig.get_loop_samples_cap()
    while True:
        try:
            trace = _trace_once(model, loop)
        except UndersampledError:
            if not auto_refine or loop.samples * 2 > cap:
                logger.error(f"Loop around {loop.center} still undersampled at N={loop.samples}")
                raise
            logger.warning(f"Undersampled loop around {loop.center}; doubling N to {loop.samples * 2}")
            loop = loop.with_samples(loop.samples * 2)
            continue
        logger.info(f"Traced loop r={loop.radius} around {loop.center}: winding {trace.winding}")
        return trace


def local_sign(model, ci, delta: float) -> str:
    """Sign of d(theta)/d(alpha) at alpha = 0 on a small circle around a CI"""
    if not delta > 0:
        raise InputError(f"Circle radius must be positive, got {delta}")
    alphas = np.array([-SIGN_OFFSET, SIGN_OFFSET])
    points = np.column_stack([ci.x + delta * np.cos(alphas), ci.y + delta * np.sin(alphas)])
    step = continue_branch(mixing_angles(model, points))[0]
    slope = step / (2.0 * SIGN_OFFSET)
    if abs(slope) < 1e-12:
        return DEGENERATE
    return PLUS if slope > 0 else MINUS


def _loop_states(model: BerryModel, loop: LoopSpec, representation: str) -> np.ndarray:
    """States along the loop (in the seam frame), rows |1>,|2> or |+),|-) per sample"""
    if len(loop.center) != 3:
        raise InputError("Berry-model loops need a 3D center (x0, y0, seam coordinate)")
    points = loop.points()
    if np.min(np.hypot(points[:, 0], points[:, 1])) <= NumericsConfig.CONTOUR_CLEARANCE:
        raise ContourError(f"Loop around {loop.center} touches the seam")
    model_points = np.array([model.to_model_frame(p) for p in points])
    states = continuous_adiabatic_states(model, model_points)
    if representation == CIRCULATING:
        states = np.einsum('ji,njk->nik', circulating_unitary(), states)
    elif representation != ADIABATIC:
        raise InputError(f"Unknown representation {representation!r}")
    return states


def overlap_phase(model: BerryModel, loop: LoopSpec, state_index: Union[int, Tuple[int, int]],
                  representation: str = ADIABATIC):
    """
    Discrete line integral of A = i tau around the loop.

    state_index 1 or 2 gives the diagonal Berry phase (-Im log of the
    overlap product); a pair (i, j) gives the off-diagonal midpoint sum
    i * sum_k (<i_k|j_k+1> - <i_k+1|j_k>) / 2.
    """
    if not isinstance(model, BerryModel):
        raise InputError("overlap_phase needs a Berry model")
    states = _loop_states(model, loop, representation)
    successive = np.einsum('nij,nkj->nik', states[:-1].conj(), states[1:])
    smallest = float(np.min(np.abs(np.einsum('nii->ni', successive))))
    if smallest < MIN_OVERLAP:
        raise UndersampledError(f"Overlap {smallest:.3f} between successive samples; raise N")

    if isinstance(state_index, int):
        if state_index not in (1, 2):
            raise InputError(f"Diagonal state index must be 1 or 2, got {state_index}")
        k = state_index - 1
        return float(-np.angle(np.prod(successive[:, k, k])))
    try:
        i, j = (int(v) - 1 for v in state_index)
    except (TypeError, ValueError) as exc:
        raise InputError(f"Element must be 1, 2 or a pair (i, j), got {state_index!r}") from exc
    if i not in (0, 1) or j not in (0, 1):
        raise InputError(f"Element indices must be 1 or 2, got {state_index!r}")
    if i == j:
        return complex(-np.angle(np.prod(successive[:, i, i])))
    forward = successive[:, i, j]
    backward = np.einsum('nk,nk->n', states[1:, i].conj(), states[:-1, j])
    return complex(1j * 0.5 * np.sum(forward - backward))
