from ci_analysis.locator import locate_cartesian_cis, locate_complex_cis
from cli_runner.base import GeoPhaseCommand
from cli_runner.documents import ci_points_document
from geophase.exceptions import InputError
from model_core.hamiltonians import CartesianCoupling, ComplexCoupling


class Command(GeoPhaseCommand):
    help = 'Locate and classify the conical intersections of a coupling model'
    subcommand = 'analyze-ci'
    csv_header = ('x', 'y', 'q', 'phi', 'kind', 'sign', 'residual')

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--region', type=float, nargs=4, metavar=('XMIN', 'XMAX', 'YMIN', 'YMAX'),
            default=[-5.0, 5.0, -5.0, 5.0],
            help='Search rectangle for Cartesian models (default: -5 5 -5 5)',
        )
        parser.add_argument('--grid', type=int, help='Cells per axis of the Cartesian search grid')
        parser.add_argument('--q-max', dest='q_max', type=float, help='Largest CI radius for complex models')

    def compute(self, options):
        model = self.load_model()
        if isinstance(model, CartesianCoupling):
            xmin, xmax, ymin, ymax = options['region']
            return locate_cartesian_cis(model, ((xmin, xmax), (ymin, ymax)), grid=options.get('grid'))
        if isinstance(model, ComplexCoupling):
            return locate_complex_cis(model, q_max=options.get('q_max'))
        raise InputError("analyze-ci needs a cartesian or complex coupling model")

    def as_json(self, cis):
        return ci_points_document(cis)

    def as_rows(self, cis):
        return [(ci.x, ci.y, ci.q, ci.phi, ci.kind, ci.sign, ci.residual) for ci in cis]
