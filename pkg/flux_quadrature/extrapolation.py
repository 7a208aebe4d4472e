"""
Richardson extrapolation of b-sequences to b -> 0.

With a geometric sequence b_{k+1} = r b_k and a leading error c b^p,

    R_k = (v_{k+1} - r^p v_k) / (1 - r^p)

removes the leading term. The order p (1 or 2) is read off the ratio of
successive differences, d_k / d_{k+1} -> (1/r)^p.
"""
import logging
import math
from typing import NamedTuple

import numpy as np

from geophase.exceptions import InputError, NoLimitError

logger = logging.getLogger(__name__)

MIN_SAMPLES = 4
RATIO_TOLERANCE = 1e-6
# differences below this (relative to the values) count as a constant sequence
FLAT_TOLERANCE = 1e-10


class LimitResult(NamedTuple):
    value: float
    residual: float
    order: int


def _check_sequence(bs: np.ndarray) -> float:
    if bs.size < MIN_SAMPLES:
        raise InputError(f"b_limit needs at least {MIN_SAMPLES} samples, got {bs.size}")
    if np.any(bs <= 0) or np.any(np.diff(bs) >= 0):
        raise InputError(f"b sequence must be positive and strictly decreasing: {bs.tolist()}")
    ratios = bs[1:] / bs[:-1]
    if np.max(np.abs(ratios - ratios[0])) > RATIO_TOLERANCE * ratios[0]:
        raise InputError(f"b sequence is not geometric: ratios {ratios.tolist()}")
    return float(ratios[0])


def b_limit(values, bs) -> LimitResult:
    values = np.asarray(values, dtype=float)
    bs = np.asarray(bs, dtype=float)
    if values.shape != bs.shape:
        raise InputError(f"{values.size} values for {bs.size} b samples")
    r = _check_sequence(bs)

    d = np.diff(values)
    scale = max(1.0, float(np.max(np.abs(values))))
    if np.max(np.abs(d)) <= FLAT_TOLERANCE * scale:
        return LimitResult(value=float(values[-1]), residual=0.0, order=0)

    signs = np.sign(d[np.abs(d) > FLAT_TOLERANCE * scale])
    if np.any(signs != signs[0]):
        raise NoLimitError(f"Non-monotone b sequence, differences {d.tolist()}")
    if np.any(np.abs(d) <= FLAT_TOLERANCE * scale):
        # a difference vanished mid-sequence while others did not
        raise NoLimitError(f"Stalled b sequence, differences {d.tolist()}")

    estimates = np.log(d[:-1] / d[1:]) / math.log(1.0 / r)
    measured = float(estimates[-1])
    order = 1 if measured < 1.5 else 2
    if abs(measured - order) > 0.5:
        logger.warning(f"Measured convergence order {measured:.3f} rounded to {order}")

    t = r ** order
    extrapolants = (values[1:] - t * values[:-1]) / (1.0 - t)
    residual = float(abs(extrapolants[-1] - extrapolants[-2]))
    logger.debug(f"b_limit: order {order}, extrapolants {extrapolants.tolist()}")
    return LimitResult(value=float(extrapolants[-1]), residual=residual, order=order)
