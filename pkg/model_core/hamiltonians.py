"""
Two-state model Hamiltonians: real Cartesian couplings, complex (E x e type)
couplings and the (b, alpha, beta) Berry family used for the b -> 0 limit.
"""
import logging
import math
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from geophase.exceptions import DegeneracyError, InputError
from .config import NumericsConfig

logger = logging.getLogger(__name__)

Z_CARRIES_B = 'Z_carries_b'
Y_CARRIES_B = 'Y_carries_b'
ACTIVE_AXES = (Z_CARRIES_B, Y_CARRIES_B)

# Standard-frame coordinates of an alternative-formalism point: (X, -Z, Y)
ALT_FRAME = np.array([[1.0, 0.0, 0.0],
                      [0.0, 0.0, -1.0],
                      [0.0, 1.0, 0.0]])


def as_point(point, arity: int) -> np.ndarray:
    """Coerce a coordinate tuple to a float array of the model's arity"""
    try:
        values = np.asarray(point, dtype=float).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise InputError(f"Point {point!r} is not numeric") from exc
    if values.size != arity:
        raise InputError(f"Expected a {arity}D point, got {values.size} coordinates")
    return values


def _dense_grid(terms) -> np.ndarray:
    """Build a dense (deg_x, deg_y) coefficient grid from [deg_x, deg_y, c] triples"""
    size = NumericsConfig.MAX_POLYNOMIAL_DEGREE + 1
    grid = np.zeros((size, size))
    for term in terms:
        if len(term) != 3:
            raise InputError(f"Polynomial term {term!r} must be [deg_x, deg_y, c]")
        dx, dy, c = term
        if int(dx) != dx or int(dy) != dy or dx < 0 or dy < 0:
            raise InputError(f"Polynomial degrees must be non-negative integers: {term!r}")
        if dx + dy > NumericsConfig.MAX_POLYNOMIAL_DEGREE:
            raise InputError(
                f"Total degree {int(dx + dy)} exceeds {NumericsConfig.MAX_POLYNOMIAL_DEGREE}"
            )
        grid[int(dx), int(dy)] += float(c)
    return grid


class CartesianCoupling:
    """Real coupling V = [[-A, B], [B, A]] with bivariate polynomial A and B"""

    arity = 2

    def __init__(self, coeffs_A, coeffs_B, axes: Tuple[str, str] = ('X', 'Y')):
        self.coeffs_A = _dense_grid(coeffs_A)
        self.coeffs_B = _dense_grid(coeffs_B)
        self.axes = tuple(axes)
        self._A_X = P.polyder(self.coeffs_A, axis=0)
        self._A_Y = P.polyder(self.coeffs_A, axis=1)
        self._B_X = P.polyder(self.coeffs_B, axis=0)
        self._B_Y = P.polyder(self.coeffs_B, axis=1)

    def __repr__(self):
        return f"CartesianCoupling(axes={self.axes}, scale={self.scale:g})"

    @property
    def scale(self) -> float:
        return max(1.0, float(np.abs(self.coeffs_A).max()), float(np.abs(self.coeffs_B).max()))

    def A(self, x, y):
        return P.polyval2d(x, y, self.coeffs_A)

    def B(self, x, y):
        return P.polyval2d(x, y, self.coeffs_B)

    def A_X(self, x, y):
        return P.polyval2d(x, y, self._A_X)

    def A_Y(self, x, y):
        return P.polyval2d(x, y, self._A_Y)

    def B_X(self, x, y):
        return P.polyval2d(x, y, self._B_X)

    def B_Y(self, x, y):
        return P.polyval2d(x, y, self._B_Y)

    def jacobian(self, x, y) -> float:
        """A_X * B_Y - B_X * A_Y"""
        return float(self.A_X(x, y) * self.B_Y(x, y) - self.B_X(x, y) * self.A_Y(x, y))

    def terms(self, which: str):
        """Non-zero [deg_x, deg_y, c] triples of A or B, in degree order"""
        grid = self.coeffs_A if which == 'A' else self.coeffs_B
        return [[int(i), int(j), float(grid[i, j])] for i, j in zip(*np.nonzero(grid))]


def _series_degree(q_plus, q_minus) -> int:
    degree = 1
    for m, coeffs in enumerate(q_plus, start=1):
        if len(coeffs):
            degree = max(degree, 3 * m - 1 + 2 * (len(coeffs) - 1))
    for m, coeffs in enumerate(q_minus, start=1):
        if len(coeffs):
            degree = max(degree, 3 * m + 1 + 2 * (len(coeffs) - 1))
    return degree


class ComplexCoupling:
    """
    Complex off-diagonal coupling
    V12 = K q e^{-i phi} [1 + q^-2 sum_m q^{3m} Q_{m+} e^{3im phi} + sum_m q^{3m} Q_{m-} e^{-3im phi}]
    with Q_{m+-} polynomials in q**2 given as coefficient vectors.
    """

    arity = 2

    def __init__(self, K: float = 1.0, q_plus: Sequence[Sequence[float]] = (),
                 q_minus: Sequence[Sequence[float]] = ()):
        self.K = float(K)
        if self.K == 0.0:
            raise InputError("Coupling constant K must be non-zero")
        self.q_plus = tuple(tuple(float(c) for c in coeffs) for coeffs in q_plus)
        self.q_minus = tuple(tuple(float(c) for c in coeffs) for coeffs in q_minus)
        degree = _series_degree(self.q_plus, self.q_minus)
        if degree > NumericsConfig.MAX_POLYNOMIAL_DEGREE:
            raise InputError(f"Series degree {degree} exceeds {NumericsConfig.MAX_POLYNOMIAL_DEGREE}")

    @classmethod
    def quartic(cls, mu: float, lam: float, K: float = 1.0) -> 'ComplexCoupling':
        """Quartic shortcut: V12 = K q e^{-i phi} (1 - mu q e^{3i phi} + lam q^3 e^{-3i phi})"""
        return cls(K=K, q_plus=[[-float(mu)]], q_minus=[[float(lam)]])

    def __repr__(self):
        quartic = self.quartic_parameters
        if quartic is not None:
            return f"ComplexCoupling(K={self.K:g}, mu={quartic[0]:g}, lambda={quartic[1]:g})"
        return f"ComplexCoupling(K={self.K:g}, q_plus={self.q_plus}, q_minus={self.q_minus})"

    @property
    def quartic_parameters(self):
        """(mu, lambda) when the series truncates to the quartic form, else None"""
        plus = [c for c in self.q_plus]
        minus = [c for c in self.q_minus]
        if any(any(coeffs) for coeffs in plus[1:]) or any(any(coeffs) for coeffs in minus[1:]):
            return None
        if (plus and any(plus[0][1:])) or (minus and any(minus[0][1:])):
            return None
        mu = -plus[0][0] if plus and plus[0] else 0.0
        lam = minus[0][0] if minus and minus[0] else 0.0
        return mu, lam

    @property
    def scale(self) -> float:
        return abs(self.K)

    def bracket(self, q, phi):
        """The bracketed series multiplying K q e^{-i phi}"""
        q = np.asarray(q, dtype=float)
        value = np.ones(np.broadcast(q, phi).shape, dtype=complex)
        for m, coeffs in enumerate(self.q_plus, start=1):
            if coeffs:
                value = value + q ** (3 * m - 2) * P.polyval(q * q, coeffs) * np.exp(3j * m * phi)
        for m, coeffs in enumerate(self.q_minus, start=1):
            if coeffs:
                value = value + q ** (3 * m) * P.polyval(q * q, coeffs) * np.exp(-3j * m * phi)
        return value

    def v12(self, q, phi):
        return self.K * q * np.exp(-1j * phi) * self.bracket(q, phi)


class BerryGeometry(NamedTuple):
    """Standard-frame coordinates and angles of a Berry-model point"""
    x: float
    y: float
    z: float
    q: float
    phi: float
    q_prime: float
    phi_prime: float
    R: float
    theta: float


class BerryModel:
    """
    H = [[bZ, alpha X - i beta Y], [alpha X + i beta Y, -bZ]] in the standard
    formalism. With active_axis = Y_carries_b the seam runs along Y instead:
    H = [[beta Z, alpha X - i bY], [alpha X + i bY, -beta Z]].
    """

    arity = 3

    def __init__(self, b: float = 1.0, alpha: float = 1.0, beta: float = 1.0,
                 active_axis: str = Z_CARRIES_B):
        self.b = float(b)
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.active_axis = active_axis
        if self.b < 0:
            raise InputError(f"b must be non-negative, got {self.b}")
        if self.alpha <= 0 or self.beta <= 0:
            raise InputError(f"alpha and beta must be positive, got {self.alpha}, {self.beta}")
        if active_axis not in ACTIVE_AXES:
            raise InputError(f"Unknown active_axis {active_axis!r}")

    def __repr__(self):
        return (f"BerryModel(b={self.b:g}, alpha={self.alpha:g}, beta={self.beta:g}, "
                f"active_axis={self.active_axis})")

    @property
    def gamma(self) -> float:
        return self.alpha / self.beta

    @property
    def is_alternative(self) -> bool:
        return self.active_axis == Y_CARRIES_B

    def with_b(self, b: float) -> 'BerryModel':
        return BerryModel(b=b, alpha=self.alpha, beta=self.beta, active_axis=self.active_axis)

    def standard_point(self, point) -> np.ndarray:
        """Coordinates in the frame where b multiplies the third axis"""
        values = as_point(point, 3)
        return ALT_FRAME @ values if self.is_alternative else values

    def to_model_frame(self, vector) -> np.ndarray:
        """Map Cartesian components from the standard frame back to the model's axes"""
        vector = np.asarray(vector)
        return ALT_FRAME.T @ vector if self.is_alternative else vector

    def geometry(self, point) -> BerryGeometry:
        x, y, z = self.standard_point(point)
        q = math.hypot(x, y)
        q_prime = math.hypot(self.alpha * x, self.beta * y)
        R = math.hypot(q_prime, self.b * z)
        return BerryGeometry(
            x=x, y=y, z=z, q=q, phi=math.atan2(y, x),
            q_prime=q_prime, phi_prime=math.atan2(self.beta * y, self.alpha * x),
            R=R, theta=math.atan2(q_prime, self.b * z),
        )


def example_one() -> CartesianCoupling:
    """A = X^2 - 1, B = Y: CIs at (+-1, 0) with opposite signs"""
    return CartesianCoupling([[2, 0, 1.0], [0, 0, -1.0]], [[0, 1, 1.0]])


def example_two() -> CartesianCoupling:
    """A = X^2 - 1, B = XZ in the (X, Z) plane: CIs at (+-1, 0) with equal signs"""
    return CartesianCoupling([[2, 0, 1.0], [0, 0, -1.0]], [[1, 1, 1.0]], axes=('X', 'Z'))


def eval_potential(model, point) -> np.ndarray:
    """Hermitian, traceless 2x2 potential matrix of any model at a point"""
    if isinstance(model, CartesianCoupling):
        x, y = as_point(point, 2)
        A, B = float(model.A(x, y)), float(model.B(x, y))
        return np.array([[-A, B], [B, A]], dtype=complex)
    if isinstance(model, ComplexCoupling):
        x, y = as_point(point, 2)
        v = complex(model.v12(math.hypot(x, y), math.atan2(y, x)))
        return np.array([[0.0, v], [v.conjugate(), 0.0]], dtype=complex)
    if isinstance(model, BerryModel):
        X, Y, Z = as_point(point, 3)
        a, be, b = model.alpha, model.beta, model.b
        if model.is_alternative:
            return np.array([[be * Z, a * X - 1j * b * Y],
                             [a * X + 1j * b * Y, -be * Z]], dtype=complex)
        return np.array([[b * Z, a * X - 1j * be * Y],
                         [a * X + 1j * be * Y, -b * Z]], dtype=complex)
    raise InputError(f"Unsupported model type {type(model).__name__}")


def mixing_angle(model, point) -> float:
    """theta = atan2(B, A) / 2 (Cartesian) or arg(V12) / 2 (complex), in (-pi/2, pi/2]"""
    if isinstance(model, CartesianCoupling):
        x, y = as_point(point, 2)
        A, B = float(model.A(x, y)), float(model.B(x, y))
        if math.hypot(A, B) <= NumericsConfig.DEGENERACY_TOLERANCE * model.scale:
            raise DegeneracyError(f"A = B = 0 at {(x, y)}", point=(x, y))
        return 0.5 * math.atan2(B, A)
    if isinstance(model, ComplexCoupling):
        x, y = as_point(point, 2)
        q = math.hypot(x, y)
        v = complex(model.v12(q, math.atan2(y, x)))
        if abs(v) <= NumericsConfig.DEGENERACY_TOLERANCE * model.scale * max(1.0, q):
            raise DegeneracyError(f"V12 = 0 at {(x, y)}", point=(x, y))
        return 0.5 * math.atan2(v.imag, v.real)
    raise InputError(f"Mixing angle is defined for 2D coupling models, not {type(model).__name__}")


def polar_point(q: float, phi: float) -> Tuple[float, float]:
    return q * math.cos(phi), q * math.sin(phi)
