"""
b -> 0 flux reports and the adiabatic / circulating flux tables.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from geophase.exceptions import InputError, NoLimitError, TableError
from gauge_fields.fields import FIELD_KINDS, MAGNETIC, YANG_MILLS
from model_core.config import NumericsConfig
from model_core.serializers import model_to_dict
from model_core.states import ADIABATIC, CIRCULATING, REPRESENTATIONS
from .extrapolation import LimitResult, b_limit
from .quadrature import ELEMENT_LABELS, element_index, flux_matrix, line_matrix

logger = logging.getLogger(__name__)

LINE = 'line'
REPORT_KINDS = (LINE,) + FIELD_KINDS

PASS = 'PASS'
FAIL = 'FAIL'

PI = math.pi

# Limits for a disc above the seam (Z > 0); the Yang-Mills column follows sign(Z)
TABLE_TARGETS = {
    ADIABATIC: {
        MAGNETIC: {'11': 0.0, '12': -PI, '21': -PI, '22': 0.0},
        YANG_MILLS: {'11': PI, '12': 0.0, '21': 0.0, '22': -PI},
    },
    CIRCULATING: {
        MAGNETIC: {'++': -PI, '+-': 0.0, '-+': 0.0, '--': PI},
        YANG_MILLS: {'++': 0.0, '+-': PI, '-+': PI, '--': 0.0},
    },
}


def table_targets(representation: str, z: float = 1.0) -> dict:
    if representation not in REPRESENTATIONS:
        raise InputError(f"Unknown representation {representation!r}")
    if z == 0.0:
        raise InputError("The flux table needs a disc off the equator (Z != 0)")
    s = math.copysign(1.0, z)
    targets = TABLE_TARGETS[representation]
    return {
        MAGNETIC: dict(targets[MAGNETIC]),
        YANG_MILLS: {label: s * value for label, value in targets[YANG_MILLS].items()},
    }


@dataclass
class FluxReport:
    model: dict
    representation: str
    element: str
    kind: str
    contour: Tuple[float, float]
    b_sequence: List[float]
    values: List[complex]
    limit: Optional[LimitResult]
    tolerance: float
    error: str = ''

    @property
    def passed(self) -> bool:
        return self.limit is not None and self.limit.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            'model': self.model,
            'representation': self.representation,
            'element': self.element,
            'kind': self.kind,
            'contour': list(self.contour),
            'b_sequence': list(self.b_sequence),
            'values': [[v.real, v.imag] for v in self.values],
            'limit': None if self.limit is None else self.limit.value,
            'residual': None if self.limit is None else self.limit.residual,
            'order': None if self.limit is None else self.limit.order,
            'error': self.error,
        }


def _limit_of(values: List[complex], bs: List[float], label: str):
    """Extrapolate the real parts; NoLimitError becomes a message on the report"""
    imaginary = max(abs(v.imag) for v in values)
    if imaginary > 1e3 * NumericsConfig.get_quad_tolerance():
        logger.warning(f"Element {label} has imaginary part {imaginary:.3e}; extrapolating the real part")
    try:
        return b_limit([v.real for v in values], bs), ''
    except NoLimitError as exc:
        logger.warning(f"No b -> 0 limit for element {label}: {exc}")
        return None, str(exc)


def flux_report(model, representation: str, element, kind: str, contour=(1.0, 1.0),
                bs=None, tolerance=None) -> FluxReport:
    """
    Evaluate a line integral (kind 'line') or a surface flux over a b sequence
    and extrapolate to b -> 0.
    """
    if kind not in REPORT_KINDS:
        raise InputError(f"Unknown report kind {kind!r}; expected one of {REPORT_KINDS}")
    i, j = element_index(representation, element)
    bs = NumericsConfig.get_b_sequence(bs)
    tolerance = tolerance if tolerance is not None else NumericsConfig.get_flux_tolerance()

    values = []
    for b in bs:
        if kind == LINE:
            matrix = line_matrix(model, representation, contour, b)
        else:
            matrix = flux_matrix(model, representation, kind, contour, b)
        values.append(complex(matrix[i, j]))

    label = element if isinstance(element, str) else f"{i + 1}{j + 1}"
    limit, error = _limit_of(values, bs, label)
    return FluxReport(
        model=model_to_dict(model), representation=representation, element=label, kind=kind,
        contour=tuple(float(v) for v in contour), b_sequence=list(bs), values=values,
        limit=limit, tolerance=tolerance, error=error,
    )


@dataclass
class TableEntry:
    kind: str
    element: str
    target: float
    report: FluxReport

    @property
    def deviation(self) -> float:
        if self.report.limit is None:
            return math.inf
        return abs(self.report.limit.value - self.target)

    @property
    def status(self) -> str:
        if self.report.passed and self.deviation <= self.report.tolerance:
            return PASS
        return FAIL

    def as_dict(self) -> dict:
        limit = self.report.limit
        return {
            'kind': self.kind,
            'element': self.element,
            'target': self.target,
            'limit': None if limit is None else limit.value,
            'residual': None if limit is None else limit.residual,
            'status': self.status,
        }


@dataclass
class FluxTable:
    representation: str
    contour: Tuple[float, float]
    entries: List[TableEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.status == PASS for entry in self.entries)

    def failing(self) -> List[TableEntry]:
        return [entry for entry in self.entries if entry.status == FAIL]

    def entry(self, kind: str, element: str) -> TableEntry:
        for candidate in self.entries:
            if candidate.kind == kind and candidate.element == element:
                return candidate
        raise InputError(f"No {kind} entry {element!r} in the {self.representation} table")

    def limits(self, kind: str) -> np.ndarray:
        """2x2 matrix of extrapolated limits for one field kind"""
        matrix = np.full((2, 2), np.nan)
        for entry in self.entries:
            if entry.kind == kind and entry.report.limit is not None:
                matrix[ELEMENT_LABELS[self.representation][entry.element]] = entry.report.limit.value
        return matrix

    def as_dict(self) -> dict:
        return {
            'representation': self.representation,
            'contour': list(self.contour),
            'passed': self.passed,
            'entries': [entry.as_dict() for entry in self.entries],
        }


def table_report(model, representation: str, contour=(1.0, 1.0), bs=None,
                 tolerance=None, strict: bool = False) -> FluxTable:
    """
    Extrapolated magnetic and Yang-Mills fluxes of every element, checked
    against the expected limits. strict=True raises TableError on any FAIL.
    """
    targets = table_targets(representation, float(contour[1]))
    bs = NumericsConfig.get_b_sequence(bs)
    tolerance = tolerance if tolerance is not None else NumericsConfig.get_flux_tolerance()
    snapshot = model_to_dict(model)
    table = FluxTable(representation=representation, contour=tuple(float(v) for v in contour))

    for kind in FIELD_KINDS:
        matrices = [flux_matrix(model, representation, kind, contour, b) for b in bs]
        for label, index in ELEMENT_LABELS[representation].items():
            values = [complex(m[index]) for m in matrices]
            limit, error = _limit_of(values, bs, label)
            report = FluxReport(
                model=snapshot, representation=representation, element=label, kind=kind,
                contour=table.contour, b_sequence=list(bs), values=values,
                limit=limit, tolerance=tolerance, error=error,
            )
            table.entries.append(TableEntry(kind=kind, element=label, target=targets[kind][label], report=report))

    failing = table.failing()
    logger.info(f"{representation} flux table: {len(table.entries) - len(failing)}/{len(table.entries)} entries pass")
    if failing and strict:
        names = [f"{entry.kind}[{entry.element}]" for entry in failing]
        logger.error(f"{representation} flux table failed: {', '.join(names)}")
        raise TableError(f"Flux table entries missed their targets: {', '.join(names)}", failing=names)
    return table
