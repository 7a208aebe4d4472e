"""
A degenerate electronic doublet driven by two sinusoidal perturbations,

    H(t) = G/2 [[-cos wt, sin wt], [sin wt, cos wt]],   i dchi/dt = H chi,

solved exactly (two exponential branches), in the adiabatic limit, and by
adaptive integration.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from geophase.exceptions import InputError, RegimeError, StiffnessError
from model_core.config import NumericsConfig

logger = logging.getLogger(__name__)

GROUND = 'ground'
EXCITED = 'excited'
STATES = (GROUND, EXCITED)

MIN_ODE_TOLERANCE = 1e-13
# DOP853 refuses relative tolerances close to machine precision
MIN_RTOL = 3e-14
NORM_DRIFT_TOLERANCE = 1e-9
PHASE_SAMPLES = 512
DEFAULT_RATIOS = (1e2, 1e3, 1e4)

INITIAL_STATES = {
    GROUND: (1.0, 0.0),
    EXCITED: (0.0, 1.0),
}


@dataclass(frozen=True)
class DoubletDynamics:
    G: float
    omega: float
    chi0: tuple = (1.0, 0.0)

    def __post_init__(self):
        if not self.G > 0:
            raise InputError(f"G must be positive, got {self.G}")
        if self.omega < 0:
            raise InputError(f"omega must be non-negative, got {self.omega}")
        chi0 = tuple(complex(c) for c in self.chi0)
        if len(chi0) != 2:
            raise InputError(f"chi0 needs two amplitudes, got {len(chi0)}")
        norm = abs(chi0[0]) ** 2 + abs(chi0[1]) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InputError(f"Initial amplitudes must be normalised, |chi0|^2 = {norm}")
        object.__setattr__(self, 'chi0', chi0)

    @classmethod
    def for_state(cls, which: str, G: float, omega: float) -> 'DoubletDynamics':
        if which not in INITIAL_STATES:
            raise InputError(f"Unknown state {which!r}; expected one of {STATES}")
        return cls(G=G, omega=omega, chi0=INITIAL_STATES[which])

    @property
    def K(self) -> float:
        return 0.5 * math.hypot(self.G, self.omega)

    # Branch coefficients; f1 = P'/P and f2 = M'/M
    @property
    def P(self) -> float:
        return self.K + 0.5 * self.G + 0.5 * self.omega

    @property
    def P_prime(self) -> float:
        return self.K + 0.5 * self.G - 0.5 * self.omega

    @property
    def M(self) -> float:
        return self.K - 0.5 * self.G + 0.5 * self.omega

    @property
    def M_prime(self) -> float:
        return self.K - 0.5 * self.G - 0.5 * self.omega

    @property
    def f1(self) -> float:
        return self.P_prime / self.P

    @property
    def f2(self) -> float:
        if self.M == 0.0:
            return -1.0
        return self.M_prime / self.M

    @property
    def period(self) -> float:
        if self.omega == 0.0:
            raise InputError("A static doublet (omega = 0) has no period")
        return 2.0 * math.pi / self.omega

    def hamiltonian(self, t: float) -> np.ndarray:
        c, s = math.cos(self.omega * t), math.sin(self.omega * t)
        return 0.5 * self.G * np.array([[-c, s], [s, c]])

    def eigenvectors(self, t: float) -> np.ndarray:
        """Rows: ground (-G/2) and excited (+G/2) instantaneous eigenvectors, continuous in t"""
        c, s = math.cos(0.5 * self.omega * t), math.sin(0.5 * self.omega * t)
        return np.array([[c, -s], [s, c]])


@dataclass
class AmplitudeTrace:
    times: np.ndarray
    chi: np.ndarray  # (n, 2) complex

    @property
    def chi1(self) -> np.ndarray:
        return self.chi[:, 0]

    @property
    def chi2(self) -> np.ndarray:
        return self.chi[:, 1]

    @property
    def norm(self) -> np.ndarray:
        return np.sum(np.abs(self.chi) ** 2, axis=1)

    def total_phase(self, component: int = 1) -> np.ndarray:
        """Continuously unwrapped phase of a component relative to t = 0"""
        phase = np.unwrap(np.angle(self.chi[:, component - 1]))
        return phase - phase[0]

    def rows(self):
        """(t, re chi1, im chi1, re chi2, im chi2, norm) per sample"""
        return np.column_stack([
            self.times, self.chi1.real, self.chi1.imag, self.chi2.real, self.chi2.imag, self.norm,
        ])


def _branches(d: DoubletDynamics, t, K: float, scale_P: float, scale_M: float):
    """
    Both components as sums of the e^{i(K - w/2)t} and e^{-i(K - w/2)t} branches.

    K, scale_P and scale_M are the exact K, P and M for the exact solution and
    their G/2-limits for the adiabatic one; P' and M' enter through the exact
    f1 and f2.
    """
    t = np.asarray(t, dtype=float)
    chi1_0, chi2_0 = d.chi0
    w = d.omega
    a = K - 0.5 * w
    forward, backward = np.exp(1j * a * t), np.exp(-1j * a * t)
    ahead, behind = np.exp(1j * w * t), np.exp(-1j * w * t)
    P, Pp = scale_P, scale_P * d.f1
    M, Mp = scale_M, scale_M * d.f2

    result = []
    for sigma, prefactor in ((1.0, 1.0), (-1.0, -1j)):
        first = chi1_0 * (P + sigma * Pp * ahead) + 1j * chi2_0 * (M - sigma * Mp * ahead)
        second = chi1_0 * (M + sigma * Mp * behind) - 1j * chi2_0 * (P - sigma * Pp * behind)
        result.append(prefactor / (4.0 * K) * (forward * first + sigma * backward * second))
    return result[0], result[1]


def closed_form_amplitudes(d: DoubletDynamics, t):
    """Exact (chi_1(t), chi_2(t)) for arbitrary initial amplitudes"""
    return _branches(d, t, d.K, d.P, d.M)


def adiabatic_amplitudes(d: DoubletDynamics, t):
    """The G/omega >> 1 form: K -> G/2 in the exponents and the prefactors, f1 and f2 exact"""
    K = 0.5 * d.G
    return _branches(d, t, K, d.G + 0.5 * d.omega, 0.5 * d.omega)


def closed_form_trace(d: DoubletDynamics, t_end: float, samples: int = 256) -> AmplitudeTrace:
    times = np.linspace(0.0, t_end, samples + 1)
    chi1, chi2 = closed_form_amplitudes(d, times)
    return AmplitudeTrace(times=times, chi=np.column_stack([chi1, chi2]))


def integrate_tdse(d: DoubletDynamics, t_end: float, tol=None, samples: int = 256) -> AmplitudeTrace:
    """Adaptive DOP853 integration of i dchi/dt = H(t) chi on a uniform output grid"""
    tol = NumericsConfig.get_ode_tolerance() if tol is None else float(tol)
    if tol < MIN_ODE_TOLERANCE:
        raise InputError(f"ODE tolerance {tol} is below {MIN_ODE_TOLERANCE}")
    if not t_end > 0:
        raise InputError(f"t_end must be positive, got {t_end}")
    half_G, w = 0.5 * d.G, d.omega

    def rhs(t, y):
        c, s = math.cos(w * t), math.sin(w * t)
        return -1j * half_G * np.array([-c * y[0] + s * y[1], s * y[0] + c * y[1]])

    times = np.linspace(0.0, t_end, samples + 1)
    solution = solve_ivp(
        rhs, (0.0, t_end), np.array(d.chi0, dtype=complex), method='DOP853',
        t_eval=times, rtol=max(tol / 100.0, MIN_RTOL), atol=tol / 1000.0,
    )
    if not solution.success:
        logger.error(f"TDSE integration failed for G={d.G}, omega={d.omega}: {solution.message}")
        raise StiffnessError(f"Integrator could not advance: {solution.message}")

    trace = AmplitudeTrace(times=solution.t, chi=solution.y.T)
    drift = float(np.max(np.abs(trace.norm - 1.0)))
    if drift > NORM_DRIFT_TOLERANCE:
        logger.warning(f"Norm drift {drift:.3e} over t in [0, {t_end}] for G={d.G}, omega={d.omega}")
    logger.debug(f"TDSE: {solution.nfev} evaluations for G={d.G}, omega={d.omega}, t_end={t_end}")
    return trace


def instantaneous_populations(d: DoubletDynamics, trace: AmplitudeTrace) -> np.ndarray:
    """(n, 2) populations of the instantaneous ground and excited eigenvectors"""
    projections = np.array([d.eigenvectors(t) @ chi for t, chi in zip(trace.times, trace.chi)])
    return np.abs(projections) ** 2


# ─── Topological phase ───────────────────────────────────────────

def _branch_brackets(d: DoubletDynamics, component: int):
    """
    (A, B) of both branches of one component: the forward branch is
    e^{i(K - w/2)t} (A + B e^{iwt}) / 4K and the backward one
    e^{-i(K - w/2)t} (A + B e^{-iwt}) / 4K, up to the component prefactor.
    """
    if component not in (1, 2):
        raise InputError(f"Component must be 1 or 2, got {component}")
    sigma = 1.0 if component == 1 else -1.0
    c1, c2 = d.chi0
    forward = (c1 * d.P + 1j * c2 * d.M, sigma * (c1 * d.P_prime - 1j * c2 * d.M_prime))
    backward = (sigma * (c1 * d.M - 1j * c2 * d.P), c1 * d.M_prime + 1j * c2 * d.P_prime)
    return forward, backward


def branch_terms(d: DoubletDynamics, component: int, t):
    """The forward and backward branches of chi_component(t); their sum is the exact solution"""
    t = np.asarray(t, dtype=float)
    (A_f, B_f), (A_b, B_b) = _branch_brackets(d, component)
    prefactor = (1.0 if component == 1 else -1j) / (4.0 * d.K)
    w = d.omega
    a = d.K - 0.5 * w
    forward = prefactor * np.exp(1j * a * t) * (A_f + B_f * np.exp(1j * w * t))
    backward = prefactor * np.exp(-1j * a * t) * (A_b + B_b * np.exp(-1j * w * t))
    return forward, backward


def branch_weights(d: DoubletDynamics):
    """RMS magnitudes over one period of the forward and backward branch brackets"""
    forward, backward = _branch_brackets(d, 1)
    return math.hypot(*(abs(c) for c in forward)), math.hypot(*(abs(c) for c in backward))


def surviving_state(d: DoubletDynamics) -> str:
    """
    The state whose branch dominates the evolution of d.chi0: the forward
    branch follows the ground state, the backward one the excited state.
    """
    forward, backward = branch_weights(d)
    larger, smaller = max(forward, backward), min(forward, backward)
    if smaller > 0.0 and larger / smaller < NumericsConfig.REGIME_RATIO:
        raise RegimeError(
            f"Branch weights {forward:.3g} and {backward:.3g} differ by a factor {larger / smaller:.2f} "
            f"at G/omega = {d.G / d.omega:.3g}; no surviving term"
        )
    return GROUND if forward > backward else EXCITED


def surviving_branch(d: DoubletDynamics, component: int, t) -> np.ndarray:
    """
    The dominant branch of the exact solution with its dynamical factor
    e^{+-iKt} removed.
    """
    which = surviving_state(d)
    forward, backward = branch_terms(d, component, t)
    t = np.asarray(t, dtype=float)
    if which == GROUND:
        return forward * np.exp(-1j * d.K * t)
    return backward * np.exp(1j * d.K * t)


def geometric_phase_extract(d: DoubletDynamics, which: Optional[str] = None, component: int = 1,
                            samples: int = PHASE_SAMPLES) -> float:
    """
    Signed phase gathered over one drive period by the surviving branch of
    d.chi0. `which`, when given, must name the state that survives.
    """
    if which is not None and which not in STATES:
        raise InputError(f"Unknown state {which!r}; expected one of {STATES}")
    if d.omega == 0.0:
        raise RegimeError("No drive: the phase over a period is undefined for omega = 0")
    survivor = surviving_state(d)
    if which is not None and which != survivor:
        raise InputError(f"The initial amplitudes {d.chi0} evolve as the {survivor} state, not the {which} state")
    times = np.linspace(0.0, d.period, samples + 1)
    branch = surviving_branch(d, component, times)
    phase = np.unwrap(np.angle(branch))
    logger.debug(f"{survivor} branch phase over one period at G/omega = {d.G / d.omega:.3g}: {phase[-1] - phase[0]}")
    return float(phase[-1] - phase[0])


def extrapolated_phase(which: str, ratios=DEFAULT_RATIOS, G: float = 1.0):
    """
    Phase at G/omega in `ratios` (increasing) and its first-order Richardson
    extrapolation in omega/G. Returns (limit, residual, per-ratio values).
    """
    ratios = sorted(float(r) for r in ratios)
    if len(ratios) < 3:
        raise InputError("Need at least three G/omega ratios")
    values = [geometric_phase_extract(DoubletDynamics.for_state(which, G, G / r), which) for r in ratios]
    steps = np.diff(values)
    if np.max(np.abs(steps)) <= 1e-12:
        return values[-1], 0.0, values
    extrapolants = []
    for (r0, v0), (r1, v1) in zip(zip(ratios, values), zip(ratios[1:], values[1:])):
        t = r0 / r1
        extrapolants.append((v1 - t * v0) / (1.0 - t))
    return extrapolants[-1], abs(extrapolants[-1] - extrapolants[-2]), values
