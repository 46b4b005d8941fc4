# -*- coding: utf-8 -*-

"""
Writes the result of a scenario: report.csv, diagnostics.json, convergence.csv and the extra tables.
"""

import csv
import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, List

import numpy as np

from scenarios import ScenarioResult
from scenarios._base import ReportRow
from utils import LOGGER_NAME

REPORT_FILE_NAME = 'report.csv'

DIAGNOSTICS_FILE_NAME = 'diagnostics.json'

CONVERGENCE_FILE_NAME = 'convergence.csv'

REPORT_HEADER = ['t', 'lambda', 'quantity', 'i', 'j', 'value']

CONVERGENCE_HEADER = ['level', 'grid_n', 'step', 'error', 'order']


def format_cell(value: Any) -> str:
    """Floats in full precision scientific notation, None as an empty cell"""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return '{:.17e}'.format(float(value))
    return str(value)


def _row_key(row: ReportRow):
    t = math.inf if row.t is None else row.t
    lam = math.inf if row.lam is None else row.lam
    i = -1 if row.i is None else row.i
    j = -1 if row.j is None else row.j
    return t, lam, row.quantity, i, j


def sorted_rows(rows: Iterable[ReportRow]) -> List[ReportRow]:
    """Time ascending, then lambda ascending; rows without a time or lambda come last"""
    return sorted(rows, key=_row_key)


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    raise TypeError('{} is not JSON serializable'.format(type(value).__name__))


def _finite(value: Any) -> Any:
    """Replaces non finite floats by their names, JSON has no literal for them"""
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    if isinstance(value, (float, np.floating)) and not math.isfinite(value):
        return str(float(value))
    return value


def write_csv(path: Path, header: List[str], rows: Iterable[Iterable[Any]]):
    """Writes a CSV file with a header row

    :param Path path: The file to write
    :param List[str] header: The column names
    :param Iterable[Iterable[Any]] rows: The rows, formatted with :func:`format_cell`
    :raises OSError: The file can not be written, the message names the path
    """
    try:
        with open(path, 'w', encoding='utf-8', newline='') as csv_file:
            writer = csv.writer(csv_file, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(cell) for cell in row])
    except OSError as e:
        logging.getLogger(LOGGER_NAME).error('Can not write "%s": %s', path, e)
        raise OSError('Can not write "{}": {}'.format(path, e)) from e


def write_json(path: Path, values: Any):
    try:
        with open(path, 'w', encoding='utf-8') as json_file:
            json.dump(_finite(values), json_file, sort_keys=True, indent=2, default=_json_default)
            json_file.write('\n')
    except OSError as e:
        logging.getLogger(LOGGER_NAME).error('Can not write "%s": %s', path, e)
        raise OSError('Can not write "{}": {}'.format(path, e)) from e


def emit_report(result: ScenarioResult, output_dir: Path) -> List[Path]:
    """Writes the files of a scenario result into a directory

    convergence.csv is written only when the refinement study produced rows.

    :param ScenarioResult result: The result of the scenario
    :param Path output_dir: The directory, created if missing
    :return: The written files
    :rtype: List[Path]
    """
    output_dir = Path(output_dir)
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logging.getLogger(LOGGER_NAME).error('Can not create the output directory "%s": %s', output_dir, e)
        raise OSError('Can not create the output directory "{}": {}'.format(output_dir, e)) from e

    written = []

    report_path = output_dir / REPORT_FILE_NAME
    write_csv(report_path, REPORT_HEADER,
              ([row.t, row.lam, row.quantity, row.i, row.j, row.value] for row in sorted_rows(result.rows)))
    written.append(report_path)

    diagnostics_path = output_dir / DIAGNOSTICS_FILE_NAME
    write_json(diagnostics_path, result.diagnostics)
    written.append(diagnostics_path)

    if result.convergence:
        convergence_path = output_dir / CONVERGENCE_FILE_NAME
        write_csv(convergence_path, CONVERGENCE_HEADER,
                  ([row.level, row.grid_n, row.step, row.error, row.order] for row in result.convergence))
        written.append(convergence_path)

    for file_name in sorted(result.tables):
        table = result.tables[file_name]
        table_path = output_dir / file_name
        write_csv(table_path, table.header, table.rows)
        written.append(table_path)

    logging.getLogger(LOGGER_NAME).info('Wrote %s', ', '.join(str(path) for path in written))
    return written
