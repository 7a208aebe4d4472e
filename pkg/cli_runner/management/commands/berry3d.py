import math

import numpy as np

from adiabatic_dynamics.monopole import LOWER, UPPER, Monopole3D, berry3d_phase, berry3d_surface_integral
from cli_runner.base import GeoPhaseCommand
from cli_runner.documents import BERRY3D_COLUMNS, berry3d_document
from geophase.exceptions import InputError

CLOSED = 'closed'
QUADRATURE = 'quadrature'


class Command(GeoPhaseCommand):
    help = 'Berry phases of both monopole states on contours of constant polar angle'
    subcommand = 'berry3d'
    default_format = 'text'
    csv_header = BERRY3D_COLUMNS

    def add_command_arguments(self, parser):
        parser.add_argument('--theta-cap', dest='theta_cap', type=float, nargs='+',
                            help='Cap angles in radians (default: --caps uniform angles in (0, pi])')
        parser.add_argument('--caps', type=int, default=20, help='Number of uniform cap angles (default: 20)')
        parser.add_argument('--R', dest='R', type=float, default=1.0, help='Sphere radius (default: 1.0)')
        parser.add_argument('--method', choices=(CLOSED, QUADRATURE), default=CLOSED)

    def compute(self, options):
        angles = options.get('theta_cap')
        if not angles:
            if options['caps'] < 1:
                raise InputError(f"--caps must be positive, got {options['caps']}")
            angles = math.pi * np.arange(1, options['caps'] + 1) / options['caps']
        self.R, self.method = options['R'], options['method']
        phase = berry3d_phase if self.method == CLOSED else berry3d_surface_integral
        rows = []
        for theta_cap in angles:
            cap = Monopole3D(theta_cap=float(theta_cap), R=self.R)
            rows.append((cap.theta_cap, phase(cap, LOWER), phase(cap, UPPER)))
        return rows

    def as_json(self, rows):
        return berry3d_document(self.R, self.method, rows)

    def as_rows(self, rows):
        return rows
