"""
Circular contours X - X0 = D cos(alpha), Y - Y0 = D sin(alpha).
"""
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from geophase.exceptions import InputError
from model_core.config import NumericsConfig

CCW = 'ccw'
CW = 'cw'


@dataclass(frozen=True)
class LoopSpec:
    center: Tuple[float, ...]
    radius: float
    samples: Optional[int] = None
    orientation: str = CCW

    def __post_init__(self):
        object.__setattr__(self, 'center', tuple(float(c) for c in self.center))
        object.__setattr__(self, 'samples', NumericsConfig.get_loop_samples(self.samples))
        if len(self.center) not in (2, 3):
            raise InputError(f"Loop center must be 2D or 3D, got {self.center}")
        if not self.radius > 0:
            raise InputError(f"Loop radius must be positive, got {self.radius}")
        if self.samples < NumericsConfig.MIN_LOOP_SAMPLES:
            raise InputError(f"Loop needs at least {NumericsConfig.MIN_LOOP_SAMPLES} samples")
        if self.orientation not in (CCW, CW):
            raise InputError(f"Unknown orientation {self.orientation!r}")

    @property
    def direction(self) -> int:
        return 1 if self.orientation == CCW else -1

    def with_samples(self, samples: int) -> 'LoopSpec':
        return replace(self, samples=samples)

    def alphas(self) -> np.ndarray:
        """N + 1 circling angles from 0 to +-2pi (the last closes the loop)"""
        return self.direction * np.linspace(0.0, 2.0 * math.pi, self.samples + 1)

    def points(self, alphas=None) -> np.ndarray:
        """Loop points; the first two coordinates circle, a third stays fixed"""
        alphas = self.alphas() if alphas is None else np.asarray(alphas, dtype=float)
        pts = np.tile(np.asarray(self.center), (alphas.size, 1))
        pts[:, 0] += self.radius * np.cos(alphas)
        pts[:, 1] += self.radius * np.sin(alphas)
        return pts

    def distance_to(self, x: float, y: float) -> float:
        """In-plane distance of a point from the loop center"""
        return math.hypot(x - self.center[0], y - self.center[1])
