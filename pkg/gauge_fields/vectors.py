"""
Complex 3-vectors in the cylindrical (q, phi, Z) or Cartesian (i, j, k) basis.
"""
import math
from dataclasses import dataclass

import numpy as np

from geophase.exceptions import InputError

CYLINDRICAL = 'cylindrical'
CARTESIAN = 'cartesian'
BASES = (CYLINDRICAL, CARTESIAN)


def rotation(phi: float) -> np.ndarray:
    """Columns are q-hat, phi-hat, Z-hat in Cartesian components"""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s, 0.0],
                     [s, c, 0.0],
                     [0.0, 0.0, 1.0]])


def cylindrical_to_cartesian(components, phi: float) -> np.ndarray:
    """Convert (..., 3) cylindrical components at azimuth phi"""
    return np.asarray(components) @ rotation(phi).T


def cartesian_to_cylindrical(components, phi: float) -> np.ndarray:
    return np.asarray(components) @ rotation(phi)


@dataclass(frozen=True, eq=False)
class Vec3C:
    components: np.ndarray
    basis: str = CYLINDRICAL
    phi: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.components, dtype=complex).reshape(-1)
        if values.size != 3:
            raise InputError(f"Vec3C needs three components, got {values.size}")
        if self.basis not in BASES:
            raise InputError(f"Unknown basis {self.basis!r}")
        object.__setattr__(self, 'components', values)

    def __repr__(self):
        labels = ('q', 'phi', 'Z') if self.basis == CYLINDRICAL else ('i', 'j', 'k')
        body = ', '.join(f"{label}={value:.6g}" for label, value in zip(labels, self.components))
        return f"Vec3C({body})"

    def to_cartesian(self) -> 'Vec3C':
        if self.basis == CARTESIAN:
            return self
        return Vec3C(cylindrical_to_cartesian(self.components, self.phi), CARTESIAN, self.phi)

    def to_cylindrical(self) -> 'Vec3C':
        if self.basis == CYLINDRICAL:
            return self
        return Vec3C(cartesian_to_cylindrical(self.components, self.phi), CYLINDRICAL, self.phi)

    def _aligned(self, other: 'Vec3C') -> np.ndarray:
        """Components of other expressed in this vector's basis"""
        if other.basis == self.basis and (self.basis == CARTESIAN or other.phi == self.phi):
            return other.components
        cartesian = other.to_cartesian().components
        if self.basis == CARTESIAN:
            return cartesian
        return cartesian_to_cylindrical(cartesian, self.phi)

    def __add__(self, other: 'Vec3C') -> 'Vec3C':
        return Vec3C(self.components + self._aligned(other), self.basis, self.phi)

    def __sub__(self, other: 'Vec3C') -> 'Vec3C':
        return Vec3C(self.components - self._aligned(other), self.basis, self.phi)

    def __mul__(self, scalar) -> 'Vec3C':
        return Vec3C(self.components * scalar, self.basis, self.phi)

    __rmul__ = __mul__

    def cross(self, other: 'Vec3C') -> 'Vec3C':
        return Vec3C(np.cross(self.components, self._aligned(other)), self.basis, self.phi)

    def conj(self) -> 'Vec3C':
        return Vec3C(self.components.conj(), self.basis, self.phi)

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def is_close(self, other: 'Vec3C', atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.components - self._aligned(other))) <= atol)
