import numpy as np

from cli_runner.base import GeoPhaseCommand
from cli_runner.documents import effh_document
from effective_hamiltonian.effh import build_effH
from effective_hamiltonian.serializers import load_effh_spec
from geophase.exceptions import InputError


class Command(GeoPhaseCommand):
    help = 'Effective electronic Hamiltonian built from a field tensor and its operator couplings'
    subcommand = 'effh'
    default_format = 'text'
    model_help = 'EffHSpec JSON document'
    csv_header = ('row', 'col', 're', 'im')

    def compute(self, options):
        if not self.config.model:
            raise InputError("effh needs --model pointing at an EffHSpec document")
        self.spec = load_effh_spec(self.config.model)
        return build_effH(self.spec)

    def as_json(self, H):
        return effh_document(self.spec, H)

    def as_rows(self, H):
        return [(i, j, H[i, j].real, H[i, j].imag) for i, j in np.ndindex(*H.shape)]
