"""
Golden-value checks run by verify_paper.

Each group returns a list of CheckOutcome. A group that raises is reported
as a single ERROR outcome; the overall status follows the first outcome that
is not PASS.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from adiabatic_dynamics.doublet import (
    EXCITED, GROUND, DoubletDynamics, closed_form_amplitudes, geometric_phase_extract, integrate_tdse,
)
from adiabatic_dynamics.monopole import LOWER, UPPER, Monopole3D, berry3d_phase, berry3d_surface_integral
from ci_analysis.ci_points import MINUS, PLUS, TRIGONAL_A, TRIGONAL_B
from ci_analysis.locator import locate_cartesian_cis, locate_complex_cis
from ci_analysis.signs import predicted_loop_phase
from flux_quadrature.quadrature import flux_matrix, line_integral
from flux_quadrature.reports import table_report
from gauge_fields.fields import MAGNETIC, nact, yang_mills_field
from gauge_fields.oracles import nact_numeric
from geophase.exceptions import GeoPhaseError, InputError
from model_core.hamiltonians import BerryModel, ComplexCoupling, Y_CARRIES_B, example_one, example_two
from model_core.states import ADIABATIC, CIRCULATING
from phase_tracing.loops import LoopSpec
from phase_tracing.tracer import trace_phase

logger = logging.getLogger(__name__)

PASS = 'PASS'
FAIL = 'FAIL'
ERROR = 'ERROR'

QUARTIC = (0.3, 0.003)
QUARTIC_RINGS = (3.95, 7.42, 11.37)
QUARTIC_THRESHOLD = 5.77
QUARTIC_SIGNS = [MINUS] + [PLUS] * 3 + [MINUS] * 6
LOOP_RADII = {2.0: -1, 5.0: 2, 9.0: -1, 20.0: -4}
EXAMPLE_SQUARE = ((-2.0, 2.0), (-2.0, 2.0))
STOKES_GRID = {'b': (1.0, 0.1, 0.01), 'q': (0.5, 1.0, 2.0), 'z': (0.5, 1.0)}
CAP_ANGLES = 20
DYNAMICS_PAIRS = ((10.0, 1.0), (100.0, 1.0), (2.0, 1.0))
ELLIPTIC_GAMMAS = (0.25, 0.5, 2.0, 4.0)


@dataclass
class CheckOutcome:
    name: str
    group: str
    expected: str
    actual: str
    tolerance: Optional[float]
    status: str
    message: str = ''

    def as_dict(self) -> dict:
        return {
            'name': self.name, 'group': self.group, 'expected': self.expected,
            'actual': self.actual, 'tolerance': self.tolerance,
            'status': self.status, 'message': self.message,
        }


@dataclass
class VerificationReport:
    groups: List[str]
    outcomes: List[CheckOutcome] = field(default_factory=list)
    status: str = PASS
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return len(self.outcomes)

    @property
    def passed_count(self) -> int:
        return sum(1 for outcome in self.outcomes if outcome.status == PASS)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def add(self, outcome: CheckOutcome):
        self.outcomes.append(outcome)
        # If any check fails, overall status changes
        if outcome.status != PASS and self.status == PASS:
            self.status = outcome.status

    def failing(self) -> List[CheckOutcome]:
        return [outcome for outcome in self.outcomes if outcome.status != PASS]


def _number(value) -> str:
    if isinstance(value, complex):
        return f"{value.real:.12e}{value.imag:+.12e}j"
    return f"{float(value):.12e}"


def near(name, group, expected, actual, tolerance, message='') -> CheckOutcome:
    deviation = abs(actual - expected)
    status = PASS if deviation <= tolerance else FAIL
    if status == FAIL and not message:
        message = f"deviation {deviation:.3e} exceeds {tolerance:.1e}"
    return CheckOutcome(name, group, _number(expected), _number(actual), tolerance, status, message)


def within(name, group, bound, actual, message='') -> CheckOutcome:
    """actual is a non-negative error measure that must stay below bound"""
    status = PASS if actual <= bound else FAIL
    return CheckOutcome(name, group, f"<= {bound:.1e}", _number(actual), bound, status, message)


def same(name, group, expected, actual) -> CheckOutcome:
    status = PASS if expected == actual else FAIL
    return CheckOutcome(name, group, str(expected), str(actual), None, status)


# ─── Groups ──────────────────────────────────────────────────────

def check_roots(group: str) -> List[CheckOutcome]:
    mu, lam = QUARTIC
    cis = locate_complex_cis(ComplexCoupling.quartic(mu, lam))
    outcomes = [same('quartic CI count', group, 10, len(cis))]
    rings = [cis[1:4], cis[4:7], cis[7:10]]
    for k, (ring, radius) in enumerate(zip(rings, QUARTIC_RINGS), start=1):
        for ci in ring:
            outcomes.append(near(f'ring {k} radius at phi0={ci.phi:.4f}', group, radius, ci.q, 0.01))
    outcomes.append(same('first ring azimuths', group, [0.0, 0.6667, 1.3333],
                         [round(ci.phi / math.pi, 4) for ci in rings[0]]))
    outcomes.append(same('outer ring kinds', group, [TRIGONAL_B] * 3, [ci.kind for ci in rings[2]]))
    outcomes.append(same('first ring kinds', group, [TRIGONAL_A] * 3, [ci.kind for ci in rings[0]]))
    outcomes.append(same('sign sequence', group, QUARTIC_SIGNS, [ci.sign for ci in cis]))
    # the trigonal sign flips where mu q - 3 lambda q^3 changes sign
    outcomes.append(near('sign threshold sqrt(mu/3 lambda)', group, QUARTIC_THRESHOLD,
                         math.sqrt(mu / (3.0 * lam)), 0.01))
    return outcomes


def check_loop_phases(group: str) -> List[CheckOutcome]:
    model = ComplexCoupling.quartic(*QUARTIC)
    cis = locate_complex_cis(model)
    outcomes = []
    for radius, expected in LOOP_RADII.items():
        loop = LoopSpec((0.0, 0.0), radius)
        outcomes.append(same(f'predicted phase r={radius:g} (units of pi)', group, expected,
                             predicted_loop_phase(cis, loop)))
        trace = trace_phase(model, loop)
        outcomes.append(near(f'traced phase r={radius:g}', group, expected * math.pi, trace.total_phase,
                             1e-3 * math.pi))
    return outcomes


def check_examples(group: str) -> List[CheckOutcome]:
    outcomes = []
    one = example_one()
    cis = locate_cartesian_cis(one, EXAMPLE_SQUARE)
    outcomes.append(same('example 1 signs at X0=-1, +1', group, [MINUS, PLUS], [ci.sign for ci in cis]))
    outcomes.append(same('example 1 jacobians 2X', group, [-2.0, 2.0], [round(one.jacobian(ci.x, ci.y), 9) for ci in cis]))
    loop = LoopSpec((0.0, 0.0), 2.0)
    outcomes.append(same('example 1 total phase (units of pi)', group, 0, predicted_loop_phase(cis, loop)))
    outcomes.append(near('example 1 traced phase', group, 0.0, trace_phase(one, loop).total_phase, 1e-3 * math.pi))

    two = example_two()
    cis = locate_cartesian_cis(two, EXAMPLE_SQUARE)
    outcomes.append(same('example 2 signs', group, [PLUS, PLUS], [ci.sign for ci in cis]))
    outcomes.append(same('example 2 jacobians 2X^2', group, [2.0, 2.0], [round(two.jacobian(ci.x, ci.y), 9) for ci in cis]))
    outcomes.append(same('example 2 total phase (units of pi)', group, 2, predicted_loop_phase(cis, loop)))
    outcomes.append(near('example 2 traced phase', group, 2 * math.pi, trace_phase(two, loop).total_phase,
                         1e-3 * math.pi))
    return outcomes


def _table_outcomes(representation: str, group: str) -> List[CheckOutcome]:
    table = table_report(BerryModel(), representation)
    outcomes = []
    for entry in table.entries:
        limit = entry.report.limit
        message = entry.report.error
        if limit is not None and entry.status != PASS and not message:
            message = f"residual {limit.residual:.3e}, deviation {entry.deviation:.3e}"
        outcomes.append(CheckOutcome(
            name=f'{entry.kind}[{entry.element}]', group=group, expected=_number(entry.target),
            actual='no limit' if limit is None else _number(limit.value),
            tolerance=entry.report.tolerance, status=entry.status, message=message,
        ))
    return outcomes


def check_table1(group: str) -> List[CheckOutcome]:
    return _table_outcomes(ADIABATIC, group)


def check_table2(group: str) -> List[CheckOutcome]:
    return _table_outcomes(CIRCULATING, group)


def check_stokes(group: str) -> List[CheckOutcome]:
    outcomes = []
    for b in STOKES_GRID['b']:
        model = BerryModel(b=b)
        for q_max in STOKES_GRID['q']:
            for z in STOKES_GRID['z']:
                H = flux_matrix(model, ADIABATIC, MAGNETIC, (q_max, z))
                worst = max(
                    abs(H[index] - line_integral(model, ADIABATIC, element, (q_max, z)))
                    for element, index in (('11', (0, 0)), ('12', (0, 1)))
                )
                outcomes.append(within(f'surface vs line b={b:g} q={q_max:g} Z={z:g}', group, 1e-6, worst))
    return outcomes


def check_berry3d(group: str) -> List[CheckOutcome]:
    outcomes = []
    for theta in np.linspace(math.pi / CAP_ANGLES, math.pi, CAP_ANGLES):
        cap = Monopole3D(float(theta))
        lower = berry3d_surface_integral(cap, LOWER)
        upper = berry3d_surface_integral(cap, UPPER)
        outcomes.append(near(f'gamma_lower theta={theta:.4f}', group, berry3d_phase(cap, LOWER), lower, 1e-8))
        outcomes.append(near(f'gamma_upper = -gamma_lower theta={theta:.4f}', group, -lower, upper, 1e-8))
    return outcomes


def check_dynamics(group: str) -> List[CheckOutcome]:
    outcomes = []
    for G, omega in DYNAMICS_PAIRS:
        d = DoubletDynamics.for_state(GROUND, G, omega)
        trace = integrate_tdse(d, 2 * math.pi, tol=1e-10)
        chi1, chi2 = closed_form_amplitudes(d, trace.times)
        deviation = max(float(np.max(np.abs(trace.chi1 - chi1))), float(np.max(np.abs(trace.chi2 - chi2))))
        outcomes.append(within(f'ODE vs exact G={G:g} omega={omega:g}', group, 1e-9, deviation))
    G = 1e3
    for which, expected in ((GROUND, -math.pi), (EXCITED, math.pi)):
        phase = geometric_phase_extract(DoubletDynamics.for_state(which, G, 1.0), which)
        outcomes.append(near(f'{which} topological phase G/omega=1e3', group, expected, phase, 0.01))
    return outcomes


def check_elliptic(group: str) -> List[CheckOutcome]:
    outcomes = []
    for gamma in ELLIPTIC_GAMMAS:
        model = BerryModel(b=1e-5, alpha=gamma, beta=1.0)
        value = line_integral(model, ADIABATIC, '12', (1.0, 1.0))
        outcomes.append(near(f'line integral A12 gamma={gamma:g}', group, -math.pi, value.real, 1e-3))

    profile_model = BerryModel(b=1e-9, alpha=0.5, beta=1.0)
    worst = 0.0
    for phi in np.linspace(0.1, 3.0, 12):
        expected = 0.5j * 0.5 / (1.0 + (0.25 - 1.0) * math.cos(phi) ** 2)
        tau = nact(profile_model, ADIABATIC, (math.cos(phi), math.sin(phi), 1.0))
        worst = max(worst, abs(tau.regular[0, 1, 1] - expected))
    outcomes.append(within('tau12 angular profile gamma=0.5', group, 1e-7, worst))

    oracle_model = BerryModel(b=0.6, alpha=2.0, beta=1.0)
    point = (math.cos(math.pi / 4), math.sin(math.pi / 4), 0.7)
    worst = 0.0
    for representation in (ADIABATIC, CIRCULATING):
        closed = nact(oracle_model, representation, point)
        numeric = nact_numeric(oracle_model, representation, point)
        worst = max(worst, float(np.max(np.abs(closed.regular - numeric.regular))))
    outcomes.append(within('tau vs finite-difference oracle', group, 1e-7, worst))
    return outcomes


def check_properties(group: str) -> List[CheckOutcome]:
    rng = np.random.default_rng(2024)
    count = 500
    q = rng.uniform(0.2, 2.0, size=count)
    phi = rng.uniform(-math.pi, math.pi, size=count)
    z = rng.uniform(-2.0, 2.0, size=count)
    worst = 0.0
    for x, y, zz in zip(q * np.cos(phi), q * np.sin(phi), z):
        b, alpha, beta = rng.uniform(0.01, 2.0, size=3)
        tau = nact(BerryModel(b=b, alpha=alpha, beta=beta), ADIABATIC, (x, y, zz))
        for part in (tau.regular, tau.seam):
            worst = max(worst, float(np.max(np.abs(part + np.conj(np.swapaxes(part, 0, 1))))))
    outcomes = [within('tau anti-hermiticity', group, 1e-12, worst)]

    worst = 0.0
    for qq in np.linspace(0.05, 3.0, 12):
        for zz in np.linspace(-2.0, 2.0, 12):
            for b in (1e-3, 0.1, 3.0):
                F = yang_mills_field(BerryModel(b=b, alpha=1.3, beta=0.7), ADIABATIC, (qq, 0.3 * qq, zz))
                worst = max(worst, float(np.max(np.abs(F.regular))))
    outcomes.append(within('adiabatic Yang-Mills regular part', group, 1e-10, worst))

    trace = integrate_tdse(DoubletDynamics.for_state(GROUND, 10.0, 1.0), 2 * math.pi, tol=1e-10)
    outcomes.append(within('norm conservation', group, 1e-9, float(np.max(np.abs(trace.norm - 1.0)))))

    alternative = BerryModel(b=1e-6, alpha=1.2, beta=0.8, active_axis=Y_CARRIES_B)
    worst = 0.0
    for x, y, zz in ((0.7, 1.1, 0.4), (-0.5, 0.9, -0.8), (1.3, 1.4, 0.2)):
        closed = nact(alternative, ADIABATIC, (x, y, zz))
        numeric = nact_numeric(alternative, ADIABATIC, (x, y, zz))
        worst = max(worst, float(np.max(np.abs(numeric.cartesian() - closed.cartesian()))))
    outcomes.append(within('alternative formalism vs oracle', group, 1e-5, worst))
    return outcomes


CHECK_GROUPS: Dict[str, Callable[[str], List[CheckOutcome]]] = {
    'roots': check_roots,
    'loop_phases': check_loop_phases,
    'examples': check_examples,
    'table1': check_table1,
    'table2': check_table2,
    'stokes': check_stokes,
    'berry3d': check_berry3d,
    'dynamics': check_dynamics,
    'elliptic': check_elliptic,
    'properties': check_properties,
}


def run_checks(groups=None) -> VerificationReport:
    groups = list(groups) if groups else list(CHECK_GROUPS)
    unknown = [g for g in groups if g not in CHECK_GROUPS]
    if unknown:
        raise InputError(f"Unknown check group(s) {unknown}; expected some of {list(CHECK_GROUPS)}")
    report = VerificationReport(groups=groups)
    start = time.monotonic()
    for group in groups:
        try:
            outcomes = CHECK_GROUPS[group](group)
        except GeoPhaseError as exc:
            logger.error(f"Check group {group} raised {type(exc).__name__}: {exc}")
            outcomes = [CheckOutcome(group, group, '', '', None, ERROR, f"{type(exc).__name__}: {exc}")]
        for outcome in outcomes:
            report.add(outcome)
        logger.info(f"{group}: {sum(o.status == PASS for o in outcomes)}/{len(outcomes)} checks pass")
    report.elapsed = time.monotonic() - start
    return report
