"""
Plain-text tables: datasets, feature records, and the per-checkpoint side tables.

All floats are written with 17 significant digits, so a table read back gives
the same numbers.
"""

import csv
import os
from typing import Iterable, List

import numpy as np
from kivy.logger import Logger

from .ela.features import code_number, is_feature_code
from .exceptions import InvalidArgumentError, STATUS_OK, STATUSES
from .model import Dataset, RunRecord
from .utils import format_float, parse_float, parse_int

RECORDS_HEADER = ('run_id', 'eval_count', 'feature_code', 'value', 'status')
ARCHIVE_STATS_HEADER = ('run_id', 'eval_count', 'occupied', 'coverage', 'qd_score',
                        'max_fitness', 'mean_fitness')
TIMINGS_HEADER = ('run_id', 'eval_count', 'group', 'seconds')
SERIES_HEADER = ('series', 'eval_count', 'median', 'q1', 'q3')


def _writer(handle):
    return csv.writer(handle, lineterminator='\n')


def _cell(value):
    if value is None or isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def dataset_header(dim: int, behaviours: bool = True) -> List[str]:
    header = [f'x{i}' for i in range(dim)] + ['fitness']
    if behaviours:
        header += ['b0', 'b1']
    return header


def write_dataset(path, dataset: Dataset):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = _writer(handle)
        writer.writerow(dataset_header(dataset.dim))
        for sample in dataset.samples:
            behaviour = [None, None] if sample.behaviour is None else sample.behaviour
            writer.writerow([format_float(v) for v in (*sample.genotype, sample.fitness, *behaviour)])
    Logger.debug(f'Dataset of {dataset.m} samples written to {path}')


def read_dataset(path) -> Dataset:
    """
    Reads `x0,...,x{d-1},fitness[,b0,b1]`. Behaviours are kept only when every
    row has both of them.
    """
    with open(path, 'r', encoding='utf-8', newline='') as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise InvalidArgumentError(f'{path}: empty dataset file')
    header = [name.strip() for name in rows[0]]
    if 'fitness' not in header:
        raise InvalidArgumentError(f'{path}: line 1: no fitness column')
    dim = header.index('fitness')
    has_behaviour = header[dim + 1:] == ['b0', 'b1']
    if not dim or header != dataset_header(dim, has_behaviour):
        raise InvalidArgumentError(f'{path}: line 1: expected header {",".join(dataset_header(max(dim, 1)))}')

    X, y, B = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InvalidArgumentError(f'{path}: line {lineno}: {len(row)} fields, expected {len(header)}')
        try:
            values = [parse_float(cell) for cell in row]
        except ValueError as exc:
            raise InvalidArgumentError(f'{path}: line {lineno}: {exc}')
        if any(v is None for v in values[:dim + 1]):
            raise InvalidArgumentError(f'{path}: line {lineno}: genotype and fitness are required')
        X.append(values[:dim])
        y.append(values[dim])
        B.append(values[dim + 1:])
    if not y:
        raise InvalidArgumentError(f'{path}: no samples')
    behaviours = None
    if has_behaviour and all(None not in b for b in B):
        behaviours = np.array(B, dtype=float)
    return Dataset(np.array(X, dtype=float), np.array(y, dtype=float), behaviours)


def record_row(record: RunRecord) -> list:
    return [record.run_id, record.eval_count, record.feature_code,
            format_float(record.value), record.status]


def sort_records(records: Iterable[RunRecord]) -> List[RunRecord]:
    return sorted(records, key=lambda r: (r.run_id, r.eval_count, code_number(r.feature_code)))


def write_records(path, records: Iterable[RunRecord]):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = _writer(handle)
        writer.writerow(RECORDS_HEADER)
        for record in records:
            writer.writerow(record_row(record))


def parse_record(row, lineno, path='records') -> RunRecord:
    if len(row) != len(RECORDS_HEADER):
        raise InvalidArgumentError(f'{path}: line {lineno}: {len(row)} fields, expected {len(RECORDS_HEADER)}')
    run_id, eval_count, code, value, status = (cell.strip() for cell in row)
    try:
        run_id, eval_count, value = parse_int(run_id), parse_int(eval_count), parse_float(value)
    except ValueError as exc:
        raise InvalidArgumentError(f'{path}: line {lineno}: {exc}')
    if not is_feature_code(code):
        raise InvalidArgumentError(f'{path}: line {lineno}: unknown feature code {code!r}')
    if status not in STATUSES:
        raise InvalidArgumentError(f'{path}: line {lineno}: unknown status {status!r}')
    if (value is None) == (status == STATUS_OK):
        raise InvalidArgumentError(f'{path}: line {lineno}: value does not match status {status}')
    return RunRecord(run_id, eval_count, code, value, status)


def read_records(path) -> List[RunRecord]:
    with open(path, 'r', encoding='utf-8', newline='') as handle:
        rows = list(csv.reader(handle))
    if not rows or tuple(cell.strip() for cell in rows[0]) != RECORDS_HEADER:
        raise InvalidArgumentError(f'{path}: line 1: expected header {",".join(RECORDS_HEADER)}')
    records = [parse_record(row, lineno, path) for lineno, row in enumerate(rows[1:], start=2) if row]
    seen = set()
    for record in records:
        key = record[:3]
        if key in seen:
            raise InvalidArgumentError(f'{path}: duplicate record {key}')
        seen.add(key)
    return records


def write_table(path, header, rows):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = _writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def read_table(path) -> List[list]:
    """Rows below the header, as text"""
    with open(path, 'r', encoding='utf-8', newline='') as handle:
        return [row for row in csv.reader(handle)][1:]


class CsvAppender(object):
    """
    Appends rows to a staging file and forces each batch to disk, so a crashed
    run leaves every completed checkpoint behind.
    """

    def __init__(self, path, header=None):
        self.path = path
        exists = os.path.exists(path) and os.path.getsize(path) > 0
        self._handle = open(path, 'a', encoding='utf-8', newline='')
        self._writer = _writer(self._handle)
        if header and not exists:
            self._writer.writerow(header)

    def append(self, rows):
        for row in rows:
            self._writer.writerow([_cell(v) for v in row])
        self._handle.flush()
        os.fsync(self._handle.fileno())

    def close(self):
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()
