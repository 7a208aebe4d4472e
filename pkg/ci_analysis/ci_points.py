import math
from dataclasses import dataclass, replace
from typing import Optional

ORIGIN = 'origin'
TRIGONAL_A = 'trigonal_A'
TRIGONAL_B = 'trigonal_B'
SHIFTED_TRIGONAL = 'shifted_trigonal'
CARTESIAN_ROOT = 'cartesian_root'
KINDS = (ORIGIN, TRIGONAL_A, TRIGONAL_B, SHIFTED_TRIGONAL, CARTESIAN_ROOT)

PLUS = 'plus'
MINUS = 'minus'
DEGENERATE = 'degenerate'
SIGN_VALUES = {PLUS: 1, MINUS: -1, DEGENERATE: 0}


@dataclass(frozen=True)
class CiPoint:
    """A located conical intersection with its classification"""
    x: float
    y: float
    kind: str
    residual: float
    sign: Optional[str] = None

    @property
    def location(self):
        return self.x, self.y

    @property
    def q(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        """Azimuth in [0, 2pi)"""
        if self.x == 0.0 and self.y == 0.0:
            return 0.0
        phi = math.atan2(self.y, self.x) % (2.0 * math.pi)
        return 0.0 if 2.0 * math.pi - phi < 1e-12 else phi

    @property
    def sign_value(self) -> Optional[int]:
        return SIGN_VALUES.get(self.sign) if self.sign else None

    def with_sign(self, sign: str) -> 'CiPoint':
        return replace(self, sign=sign)

    def __str__(self):
        return f"{self.kind} at ({self.x:.6f}, {self.y:.6f}) sign={self.sign}"
