"""
Report and instance files.

An exported instance is a directory holding ``instance.json`` (group table,
generators, component codes and vertex roles) next to ``hx.txt`` and
``hz.txt`` in the sparse ``rows cols nnz`` format. Experiment reports are
``records.jsonl``, ``summary.csv`` and ``report.json``.
"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

import numpy as np

from ..codes.linear_code import LinearCode
from ..complex.group import FiniteGroup
from ..complex.left_right import CLASS_NAMES, build_complex
from ..decoder.state import StepRecord
from ..gf2.bit_vector import BitVector
from ..gf2.sparse import write_sparse
from ..qtanner.code import QuantumTannerCode
from ..utils.string_utils import format_bit_string, parse_bit_string, read_text

logger = logging.getLogger(__name__)

INSTANCE_FILE = 'instance.json'
RECORDS_FILE = 'records.jsonl'
SUMMARY_FILE = 'summary.csv'
REPORT_FILE = 'report.json'

SUMMARY_FIELDS = (
    'weight', 'trials', 'converged', 'successes', 'success_rate',
    'mismatch_ratio_min', 'mismatch_ratio_median', 'mismatch_ratio_max',
    'rounds_mean', 'rounds_max',
)


def write_json(path, data):
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + '\n', encoding='utf-8')


def read_json(path):
    return json.loads(Path(path).read_text(encoding='utf-8'))


def write_jsonl(path, rows):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True) + '\n')


def read_jsonl(path):
    with open(path, encoding='utf-8') as f:
        return [json.loads(line) for line in f if line.strip()]


def write_csv(path, rows, fields):
    """Writes dict rows; ``None`` becomes an empty cell."""

    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=list(fields), lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ('' if row.get(k) is None else row[k]) for k in fields})


def read_csv(path):
    with open(path, encoding='utf-8', newline='') as f:
        return list(csv.DictReader(f))


def export_instance(directory, q):
    """
    Writes an instance so that :func:`load_instance` rebuilds it exactly.

    Returns:
        Path: The instance directory.
    """

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    data = q.to_dict()
    data['mul_table'] = q.complex.group.mul.tolist()
    write_json(directory / INSTANCE_FILE, data)
    write_sparse(directory / 'hx.txt', q.hx)
    write_sparse(directory / 'hz.txt', q.hz)
    logger.info('exported %r to %s', q, directory)
    return directory


def load_instance(path):
    """
    Rebuilds an exported instance.

    Args:
        path (str | Path): The instance directory or its ``instance.json``.

    Returns:
        QuantumTannerCode: The instance, with the roles it was exported with.
    """

    path = Path(path)
    if path.is_dir():
        path = path / INSTANCE_FILE
    data = read_json(path)
    group = FiniteGroup(np.asarray(data['mul_table'], dtype=np.int64), name=data['group'])
    complex_ = build_complex(group, data['gens_a'], data['gens_b'])
    ca = LinearCode.from_generator(np.asarray(data['code_a'], dtype=np.uint8).reshape(-1, complex_.n_a))
    cb = LinearCode.from_generator(np.asarray(data['code_b'], dtype=np.uint8).reshape(-1, complex_.n_b))
    update = tuple(CLASS_NAMES.index(c) for c in data['update_classes'])
    check = tuple(CLASS_NAMES.index(c) for c in data['check_classes'])
    return QuantumTannerCode(complex_, ca, cb, update_classes=update, check_classes=check)


def read_syndrome(path, length=None):
    """
    Reads a syndrome file of 0/1 characters.

    Raises:
        ValueError: If ``length`` is given and does not match.
    """

    bits = parse_bit_string(read_text(path))
    if length is not None and bits.size != length:
        raise ValueError(f'syndrome has {bits.size} bits, expected {length}')
    return BitVector.from_bits(bits)


def write_syndrome(path, s):
    Path(path).write_text(format_bit_string(s.to_bits()) + '\n', encoding='utf-8')


def write_step_log(path, step_log):
    write_jsonl(path, (record.to_dict() for record in step_log))


def read_step_log(path):
    return tuple(StepRecord.from_dict(row) for row in read_jsonl(path))


def write_report(directory, report):
    """
    Writes an :class:`ExperimentReport`: records, per-weight summary and the
    echoed config.
    """

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_jsonl(directory / RECORDS_FILE, (record.to_dict() for record in report.records))
    write_csv(directory / SUMMARY_FILE, report.summary, SUMMARY_FIELDS)
    write_json(directory / REPORT_FILE, report.to_dict())
    logger.info('wrote %d records to %s', len(report.records), directory)
    return directory
