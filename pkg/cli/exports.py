"""
Artifact writers: CSV with 17 significant digits and LF endings, or JSON.

The same rows always produce the same bytes.
"""
import csv
import io
import sys
from contextlib import contextmanager
from typing import Iterable, Optional, Sequence

import numpy as np
from rest_framework.renderers import JSONRenderer

from levy_models.exceptions import DomainError
from minorant_core.paths import GridPath


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return '%.17g' % value
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def json_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    records = [
        {name: (value.item() if isinstance(value, np.generic) else value) for name, value in zip(header, row)}
        for row in rows
    ]
    return JSONRenderer().render(records).decode('utf-8') + '\n'


def table_text(header: Sequence[str], rows: Iterable[Sequence], fmt: str = 'csv') -> str:
    return json_text(header, rows) if fmt == 'json' else csv_text(header, rows)


@contextmanager
def output_stream(path: Optional[str], stdout=None):
    """File at ``path`` or, when no path is given, ``stdout``."""
    if path in (None, '-'):
        yield stdout if stdout is not None else sys.stdout
        return
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        yield handle


def write_text(text: str, path: Optional[str], stdout=None):
    with output_stream(path, stdout) as stream:
        stream.write(text)


def read_path(filename: str) -> GridPath:
    """GridPath from a CSV with header t,value."""
    with open(filename, encoding='utf-8', newline='') as handle:
        rows = list(csv.reader(handle))
    if not rows or [cell.strip() for cell in rows[0]] != ['t', 'value']:
        raise DomainError(f"{filename} must start with the header t,value")
    try:
        return GridPath.from_rows((row[0], row[1]) for row in rows[1:] if row)
    except (IndexError, ValueError) as exc:
        raise DomainError(f"{filename} has a malformed row: {exc}")
