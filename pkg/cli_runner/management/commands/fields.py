from cli_runner.base import GeoPhaseCommand
from cli_runner.documents import field_records
from gauge_fields.fields import MAGNETIC, YANG_MILLS, gauge_field, nact
from gauge_fields.vectors import BASES, CYLINDRICAL
from model_core.states import ADIABATIC, REPRESENTATIONS

NACT = 'nact'
FIELDS = (NACT, MAGNETIC, YANG_MILLS)


class Command(GeoPhaseCommand):
    help = 'Evaluate the NACT, magnetic or Yang-Mills field of a Berry model at given points'
    subcommand = 'fields'
    csv_header = (
        'x', 'y', 'z', 'field', 'representation', 'element', 'basis', 'part',
        'c1_re', 'c1_im', 'c2_re', 'c2_im', 'c3_re', 'c3_im',
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--field', choices=FIELDS, default=NACT)
        parser.add_argument('--representation', choices=list(REPRESENTATIONS), default=ADIABATIC)
        parser.add_argument('--basis', choices=list(BASES), default=CYLINDRICAL)
        parser.add_argument('--point', type=float, nargs=3, action='append', required=True,
                            metavar=('X', 'Y', 'Z'), help='Evaluation point; repeat for several')

    def compute(self, options):
        model = self.load_model()
        kind, representation = options['field'], options['representation']
        records = []
        for point in options['point']:
            if kind == NACT:
                value = nact(model, representation, point)
            else:
                value = gauge_field(model, representation, kind, point)
            records.extend(field_records(value, kind, options['basis']))
        return records

    def as_json(self, records):
        return records

    def as_rows(self, records):
        rows = []
        for record in records:
            for part in ('regular', 'seam'):
                components = [value for pair in record[part] for value in pair]
                rows.append(tuple(record['point']) + (
                    record['field'], record['representation'], record['element'], record['basis'], part,
                ) + tuple(components))
        return rows
