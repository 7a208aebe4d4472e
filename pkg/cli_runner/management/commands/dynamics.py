from dataclasses import dataclass
from typing import Optional

import numpy as np

from adiabatic_dynamics.doublet import (
    GROUND, STATES, AmplitudeTrace, DoubletDynamics, adiabatic_amplitudes, closed_form_trace,
    geometric_phase_extract, integrate_tdse,
)
from cli_runner.base import GeoPhaseCommand
from cli_runner.documents import AMPLITUDE_COLUMNS, amplitude_document
from geophase.exceptions import InputError

ODE = 'ode'
EXACT = 'exact'
ADIABATIC_LIMIT = 'adiabatic'
METHODS = (ODE, EXACT, ADIABATIC_LIMIT)


@dataclass
class DynamicsResult:
    dynamics: DoubletDynamics
    method: str
    trace: AmplitudeTrace
    phase: Optional[float] = None


class Command(GeoPhaseCommand):
    help = 'Two-level dynamics under the rotating doublet Hamiltonian (G, omega)'
    subcommand = 'dynamics'
    default_format = 'csv'
    csv_header = AMPLITUDE_COLUMNS

    def add_command_arguments(self, parser):
        parser.add_argument('--G', dest='G', type=float, required=True, help='Level splitting')
        parser.add_argument('--omega', type=float, required=True, help='Drive frequency')
        parser.add_argument('--state', choices=STATES, default=GROUND, help='Initial state (default: ground)')
        parser.add_argument('--chi0', type=float, nargs=4, metavar=('RE1', 'IM1', 'RE2', 'IM2'),
                            help='Explicit normalised initial amplitudes; overrides --state')
        parser.add_argument('--t-end', dest='t_end', type=float, help='End time (default: one drive period)')
        parser.add_argument('--samples', type=int, default=256, help='Output intervals (default: 256)')
        parser.add_argument('--method', choices=METHODS, default=ODE)
        parser.add_argument('--phase', action='store_true',
                            help='Also report the topological phase of the initial state over one period')

    def compute(self, options):
        G, omega = options['G'], options['omega']
        if options.get('chi0'):
            re1, im1, re2, im2 = options['chi0']
            d = DoubletDynamics(G=G, omega=omega, chi0=(complex(re1, im1), complex(re2, im2)))
        else:
            d = DoubletDynamics.for_state(options['state'], G, omega)
        t_end = options.get('t_end') or d.period
        samples = options['samples']
        if samples < 1:
            raise InputError(f"--samples must be positive, got {samples}")

        method = options['method']
        if method == ODE:
            trace = integrate_tdse(d, t_end, samples=samples)
        elif method == EXACT:
            trace = closed_form_trace(d, t_end, samples=samples)
        else:
            times = np.linspace(0.0, t_end, samples + 1)
            trace = AmplitudeTrace(times=times, chi=np.column_stack(adiabatic_amplitudes(d, times)))

        phase = None
        if options['phase']:
            phase = geometric_phase_extract(d)
        return DynamicsResult(dynamics=d, method=method, trace=trace, phase=phase)

    def as_json(self, result):
        return amplitude_document(result.dynamics, result.method, result.trace, result.phase)

    def as_rows(self, result):
        return result.trace.rows()
