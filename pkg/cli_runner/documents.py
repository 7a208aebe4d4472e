"""
JSON documents emitted by the commands. Every builder here has a matching
schema in cli_runner.serializers.
"""
from typing import Iterable, List

import numpy as np

from ci_analysis.ci_points import CiPoint
from flux_quadrature.quadrature import element_label
from flux_quadrature.reports import FluxTable
from gauge_fields.vectors import CARTESIAN
from model_core.serializers import model_to_dict
from .formatting import json_complex, json_number, pi_multiple

PHASE_TRACE_COLUMNS = ('alpha', 'theta_unwrapped', 'partial_phase')
AMPLITUDE_COLUMNS = ('t', 're_chi1', 'im_chi1', 're_chi2', 'im_chi2', 'norm')
BERRY3D_COLUMNS = ('theta_cap', 'gamma_lower', 'gamma_upper')


def ci_point_record(ci: CiPoint) -> dict:
    return {
        'x': json_number(ci.x),
        'y': json_number(ci.y),
        'q': json_number(ci.q),
        'phi': json_number(ci.phi),
        'kind': ci.kind,
        'sign': ci.sign,
        'residual': json_number(ci.residual),
    }


def ci_points_document(cis: Iterable[CiPoint]) -> List[dict]:
    return [ci_point_record(ci) for ci in cis]


def phase_trace_document(loop, trace, predicted=None) -> dict:
    return {
        'center': [json_number(c) for c in loop.center],
        'radius': json_number(loop.radius),
        'orientation': loop.orientation,
        'samples': trace.samples,
        'total_phase': json_number(trace.total_phase),
        'total_phase_symbolic': pi_multiple(trace.total_phase),
        'winding': trace.winding,
        'predicted_winding': predicted,
        'alpha': [json_number(v) for v in trace.alphas],
        'theta_unwrapped': [json_number(v) for v in trace.theta_track],
        'partial_phase': [json_number(v) for v in trace.partial_phase],
    }


def overlap_phase_document(loop, representation: str, element: str, phase) -> dict:
    phase = complex(phase)
    return {
        'center': [json_number(c) for c in loop.center],
        'radius': json_number(loop.radius),
        'orientation': loop.orientation,
        'samples': loop.samples,
        'representation': representation,
        'element': element,
        'phase': json_complex(phase),
        'phase_symbolic': pi_multiple(phase.real) if abs(phase.imag) <= 1e-9 else None,
    }


def _vector(values) -> list:
    return [json_complex(v) for v in values]


def field_records(field_matrix, field_kind: str, basis: str) -> List[dict]:
    """One record per matrix element of a NactField or GaugeTensor"""
    representation = field_matrix.representation
    if basis == CARTESIAN:
        regular, seam = field_matrix.cartesian('regular'), field_matrix.cartesian('seam')
    else:
        regular, seam = field_matrix.regular, field_matrix.seam
    point = [json_number(c) for c in field_matrix.model.to_model_frame(np.array(field_matrix.point))]
    records = []
    for i, j in np.ndindex(2, 2):
        records.append({
            'point': point,
            'field': field_kind,
            'representation': representation,
            'element': element_label(representation, i, j),
            'basis': basis,
            'regular': _vector(regular[i, j]),
            'seam': _vector(seam[i, j]),
        })
    return records


def flux_table_document(table: FluxTable) -> dict:
    entries = []
    for entry in table.entries:
        limit = entry.report.limit
        entries.append({
            'kind': entry.kind,
            'element': entry.element,
            'target': json_number(entry.target),
            'limit': None if limit is None else json_number(limit.value),
            'limit_symbolic': None if limit is None else pi_multiple(limit.value),
            'residual': None if limit is None else json_number(limit.residual),
            'order': None if limit is None else limit.order,
            'values': [json_complex(v) for v in entry.report.values],
            'status': entry.status,
            'error': entry.report.error,
        })
    return {
        'representation': table.representation,
        'contour': [json_number(v) for v in table.contour],
        'b_sequence': [json_number(b) for b in (table.entries[0].report.b_sequence if table.entries else [])],
        'tolerance': json_number(table.entries[0].report.tolerance) if table.entries else None,
        'passed': table.passed,
        'entries': entries,
    }


def flux_tables_document(model, tables: Iterable[FluxTable]) -> dict:
    tables = list(tables)
    return {
        'model': model_to_dict(model),
        'passed': all(table.passed for table in tables),
        'tables': [flux_table_document(table) for table in tables],
    }


def amplitude_document(dynamics, method: str, trace, phase=None) -> dict:
    return {
        'G': json_number(dynamics.G),
        'omega': json_number(dynamics.omega),
        'chi0': [json_complex(c) for c in dynamics.chi0],
        'method': method,
        'columns': list(AMPLITUDE_COLUMNS),
        'rows': [[json_number(v) for v in row] for row in trace.rows()],
        'geometric_phase': None if phase is None else json_number(phase),
        'geometric_phase_symbolic': None if phase is None else pi_multiple(phase),
    }


def berry3d_document(R: float, method: str, rows) -> dict:
    return {
        'R': json_number(R),
        'method': method,
        'columns': list(BERRY3D_COLUMNS),
        'rows': [[json_number(v) for v in row] for row in rows],
    }


def effh_document(spec, H: np.ndarray) -> dict:
    return {
        'mode': spec.mode,
        'dimension': spec.dimension,
        'C1': json_number(spec.C1),
        'C2': json_number(spec.C2),
        'matrix': [[json_complex(v) for v in row] for row in np.asarray(H)],
    }


def verification_document(report) -> dict:
    return {
        'status': report.status,
        'groups': list(report.groups),
        'total': report.total,
        'passed': report.passed_count,
        'checks': [outcome.as_dict() for outcome in report.outcomes],
    }
