from dataclasses import dataclass
from typing import Optional

from ci_analysis.locator import locate_cartesian_cis, locate_complex_cis
from ci_analysis.signs import predicted_loop_phase
from cli_runner.base import GeoPhaseCommand
from cli_runner.documents import PHASE_TRACE_COLUMNS, overlap_phase_document, phase_trace_document
from flux_quadrature.quadrature import element_index
from geophase.exceptions import InputError
from model_core.hamiltonians import BerryModel, CartesianCoupling
from model_core.states import ADIABATIC, REPRESENTATIONS
from phase_tracing.loops import CCW, CW, LoopSpec
from phase_tracing.tracer import overlap_phase, trace_phase

# margin around the loop's bounding box when predicting from Cartesian CIs
REGION_MARGIN = 1.05


@dataclass
class LoopResult:
    loop: LoopSpec
    trace: object = None
    predicted: Optional[int] = None
    representation: str = ADIABATIC
    element: str = ''
    phase: complex = 0j


class Command(GeoPhaseCommand):
    help = ('Follow the phase around a circular loop: the mixing-angle trace for coupling '
            'models, the discrete Berry phase for Berry models')
    subcommand = 'trace-loop'
    default_format = 'csv'

    def add_command_arguments(self, parser):
        parser.add_argument('--center', type=float, nargs='+', required=True,
                            help='Loop center (x0 y0, plus the seam coordinate for Berry models)')
        parser.add_argument('--radius', type=float, required=True)
        parser.add_argument('--orientation', choices=[CCW, CW], default=CCW)
        parser.add_argument('--element', default='1',
                            help="Berry models: state 1 or 2, or an element label such as 12 or +- (default: 1)")
        parser.add_argument('--representation', choices=list(REPRESENTATIONS), default=ADIABATIC)

    def compute(self, options):
        model = self.load_model()
        loop = LoopSpec(tuple(options['center']), options['radius'], orientation=options['orientation'])
        if isinstance(model, BerryModel):
            element = options['element']
            representation = options['representation']
            if element in ('1', '2'):
                index = int(element)
            else:
                i, j = element_index(representation, element)
                index = (i + 1, j + 1)
            phase = overlap_phase(model, loop, index, representation)
            return LoopResult(loop=loop, representation=representation, element=element, phase=complex(phase))

        if len(loop.center) != 2:
            raise InputError("Coupling-model loops need a 2D center")
        trace = trace_phase(model, loop)
        return LoopResult(loop=loop, trace=trace, predicted=self.predict(model, loop))

    def predict(self, model, loop: LoopSpec) -> int:
        if isinstance(model, CartesianCoupling):
            (x0, y0), reach = loop.center, REGION_MARGIN * loop.radius
            cis = locate_cartesian_cis(model, ((x0 - reach, x0 + reach), (y0 - reach, y0 + reach)))
        else:
            cis = locate_complex_cis(model)
        return predicted_loop_phase(cis, loop)

    def as_json(self, result):
        if result.trace is None:
            return overlap_phase_document(result.loop, result.representation, result.element, result.phase)
        return phase_trace_document(result.loop, result.trace, result.predicted)

    def header(self, result):
        if result.trace is None:
            return ('element', 'representation', 'phase_re', 'phase_im')
        return PHASE_TRACE_COLUMNS

    def as_rows(self, result):
        if result.trace is None:
            return [(result.element, result.representation, result.phase.real, result.phase.imag)]
        trace = result.trace
        return zip(trace.alphas, trace.theta_track, trace.partial_phase)
