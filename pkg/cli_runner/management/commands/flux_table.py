from django.core.management.base import CommandError

from cli_runner.base import EXIT_FAILURE, GeoPhaseCommand
from cli_runner.documents import flux_tables_document
from cli_runner.formatting import dump_text, format_float, pi_multiple
from flux_quadrature.reports import table_report
from model_core.hamiltonians import BerryModel
from model_core.states import REPRESENTATIONS

ALL = 'all'


class Command(GeoPhaseCommand):
    help = 'Extrapolated b -> 0 magnetic and Yang-Mills fluxes of every element, with PASS/FAIL per entry'
    subcommand = 'flux-table'
    default_format = 'text'
    model_help = 'Berry model JSON document (default: circular model alpha = beta = 1)'
    csv_header = ('representation', 'kind', 'element', 'target', 'limit', 'residual', 'order', 'status')

    def add_command_arguments(self, parser):
        parser.add_argument('--representation', choices=list(REPRESENTATIONS) + [ALL], default=ALL)
        parser.add_argument('--q-max', dest='q_max', type=float, default=1.0,
                            help="Disc radius; 'inf' for the whole plane (default: 1.0)")
        parser.add_argument('--z', type=float, default=1.0, help='Height of the disc (default: 1.0)')

    def compute(self, options):
        self.model = self.load_model(required=False) or BerryModel()
        representations = REPRESENTATIONS if options['representation'] == ALL else (options['representation'],)
        contour = (options['q_max'], options['z'])
        return [table_report(self.model, representation, contour) for representation in representations]

    def after_output(self, tables):
        failing = [f"{table.representation} {entry.kind}[{entry.element}]"
                   for table in tables for entry in table.failing()]
        if failing:
            raise CommandError(f"Flux table entries missed their targets: {', '.join(failing)}",
                               returncode=EXIT_FAILURE)

    def as_json(self, tables):
        return flux_tables_document(self.model, tables)

    def as_rows(self, tables):
        rows = []
        for table in tables:
            for entry in table.entries:
                limit = entry.report.limit
                rows.append((
                    table.representation, entry.kind, entry.element, entry.target,
                    None if limit is None else limit.value,
                    None if limit is None else limit.residual,
                    None if limit is None else limit.order,
                    entry.status,
                ))
        return rows

    def as_text(self, tables) -> str:
        blocks = []
        for table in tables:
            rows = []
            for entry in table.entries:
                limit = entry.report.limit
                value = 'no limit' if limit is None else format_float(limit.value)
                symbol = '' if limit is None else (pi_multiple(limit.value) or '')
                residual = entry.report.error if limit is None else format_float(limit.residual)
                rows.append((entry.kind, entry.element, pi_multiple(entry.target), value, symbol, residual,
                             entry.status))
            q_max, z = table.contour
            title = f"{table.representation} representation, disc q <= {q_max:g} at Z = {z:g}\n"
            blocks.append(title + dump_text(('field', 'element', 'target', 'limit', '~', 'residual', 'status'), rows))
        verdict = 'PASS' if all(table.passed for table in tables) else 'FAIL'
        return '\n'.join(blocks) + f"\n{verdict}\n"
