"""
Deterministic rendering of command results as JSON, CSV and aligned text.
"""
import csv
import io
import json
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from model_core.config import NumericsConfig

PI_SYMBOL_TOLERANCE = 1e-9


def format_float(value) -> str:
    return NumericsConfig.get_float_format() % float(value)


def json_number(value) -> float:
    """A float rounded through the configured format, so reruns print the same digits"""
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(format_float(value)) + 0.0


def json_complex(value) -> list:
    value = complex(value)
    return [json_number(value.real), json_number(value.imag)]


def pi_multiple(value, tolerance: float = PI_SYMBOL_TOLERANCE) -> Optional[str]:
    """'n·π' when value is an integer multiple of pi within tolerance"""
    value = float(value)
    if not math.isfinite(value):
        return None
    n = round(value / math.pi)
    if abs(value - n * math.pi) > tolerance:
        return None
    return f"{int(n)}·π"


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if value is None:
        return ''
    return str(value)


def dump_json(document) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def dump_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def dump_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    table = [list(header)] + [[_cell(value) for value in row] for row in rows]
    widths = [max(len(row[k]) for row in table) for k in range(len(header))]
    lines = ['  '.join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip() for row in table]
    return '\n'.join(lines) + '\n'
