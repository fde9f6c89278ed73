"""
Readers and writers for the plain-text formats used by the project.

Dense matrix files hold a ``rows cols`` header followed by one line of 0/1
characters per row. Sparse matrix files hold a ``rows cols nnz`` header
followed by ``row col`` pairs. Group table files hold the order on the first
line and then ``order`` lines of space separated element indices.
"""

from pathlib import Path

import numpy as np
import regex

_HEADER_RE = regex.compile(r'^\s*(\d+)\s+(\d+)\s*$')
_SPARSE_HEADER_RE = regex.compile(r'^\s*(\d+)\s+(\d+)\s+(\d+)\s*$')
_BIT_ROW_RE = regex.compile(r'^[01]*$')
_INT_RE = regex.compile(r'\d+')


def _content_lines(text):
    return [line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith('#')]


def parse_bit_string(text):
    """
    Parses a string of 0/1 characters (whitespace ignored).

    Args:
        text (str): e.g. ``"0110"``.

    Returns:
        np.ndarray: ``uint8`` 0/1 array.

    Examples:
        >>> parse_bit_string("1 0 1")
        array([1, 0, 1], dtype=uint8)
    """

    compact = regex.sub(r'\s+', '', text)
    if not _BIT_ROW_RE.match(compact):
        raise ValueError(f'unexpected bit string {text!r}')
    return np.frombuffer(compact.encode('ascii'), dtype=np.uint8) - ord('0')


def format_bit_string(bits):
    return ''.join('1' if b else '0' for b in np.asarray(bits).ravel())


def parse_dense_matrix(text):
    """
    Parses the dense ``rows cols`` matrix format.

    Args:
        text (str): File contents.

    Returns:
        np.ndarray: ``uint8`` array of shape ``(rows, cols)``.
    """

    lines = _content_lines(text)
    if not lines:
        raise ValueError('empty matrix file')
    header = _HEADER_RE.match(lines[0])
    if header is None:
        raise ValueError(f'unexpected matrix header {lines[0]!r}')
    rows, cols = int(header.group(1)), int(header.group(2))
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f'matrix header announces {rows} rows, found {len(body)}')
    out = np.zeros((rows, cols), dtype=np.uint8)
    for i, line in enumerate(body):
        bits = parse_bit_string(line)
        if bits.shape[0] != cols:
            raise ValueError(f'row {i} has {bits.shape[0]} entries, expected {cols}')
        out[i] = bits
    return out


def format_dense_matrix(bits):
    bits = np.asarray(bits, dtype=np.uint8)
    lines = [f'{bits.shape[0]} {bits.shape[1]}']
    lines.extend(format_bit_string(row) for row in bits)
    return '\n'.join(lines) + '\n'


def parse_sparse_matrix(text):
    """
    Parses the sparse ``rows cols nnz`` format.

    Args:
        text (str): File contents.

    Returns:
        tuple: ``(rows, cols, supports)`` where ``supports[i]`` is the sorted
        list of set columns of row ``i``.
    """

    lines = _content_lines(text)
    if not lines:
        raise ValueError('empty sparse matrix file')
    header = _SPARSE_HEADER_RE.match(lines[0])
    if header is None:
        raise ValueError(f'unexpected sparse header {lines[0]!r}')
    rows, cols, nnz = (int(header.group(k)) for k in (1, 2, 3))
    if len(lines) - 1 != nnz:
        raise ValueError(f'sparse header announces {nnz} entries, found {len(lines) - 1}')
    supports = [[] for _ in range(rows)]
    for line in lines[1:]:
        fields = _INT_RE.findall(line)
        if len(fields) != 2:
            raise ValueError(f'unexpected sparse entry {line!r}')
        r, c = int(fields[0]), int(fields[1])
        if r >= rows or c >= cols:
            raise ValueError(f'sparse entry ({r}, {c}) outside {rows}x{cols}')
        supports[r].append(c)
    return rows, cols, [sorted(set(s)) for s in supports]


def format_sparse_matrix(rows, cols, supports):
    entries = [(r, c) for r, support in enumerate(supports) for c in support]
    lines = [f'{rows} {cols} {len(entries)}']
    lines.extend(f'{r} {c}' for r, c in entries)
    return '\n'.join(lines) + '\n'


def parse_group_table(text):
    """
    Parses a group multiplication-table file.

    Args:
        text (str): File contents.

    Returns:
        list: ``order`` rows of ``order`` ints each.
    """

    lines = _content_lines(text)
    if not lines:
        raise ValueError('empty group table file')
    order_fields = _INT_RE.findall(lines[0])
    if len(order_fields) != 1:
        raise ValueError(f'unexpected group table header {lines[0]!r}')
    order = int(order_fields[0])
    if len(lines) - 1 != order:
        raise ValueError(f'group table announces order {order}, found {len(lines) - 1} rows')
    return [[int(x) for x in _INT_RE.findall(line)] for line in lines[1:]]


def format_group_table(table):
    lines = [str(len(table))]
    lines.extend(' '.join(str(x) for x in row) for row in table)
    return '\n'.join(lines) + '\n'


def read_text(path):
    return Path(path).read_text(encoding='utf-8')


def write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
