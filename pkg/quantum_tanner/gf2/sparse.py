"""
Row-support representation for the large, low-density global check matrices.
"""

from __future__ import annotations

import numpy as np

from ..utils.string_utils import format_sparse_matrix, parse_sparse_matrix, read_text, write_text
from .bit_matrix import BitMatrix
from .bit_vector import BitVector


class SparseBitMatrix:
    """
    A GF(2) matrix stored as one sorted ``int64`` support array per row.

    Attributes:
        n_rows (int): Row count.
        n_cols (int): Column count.
        supports (list): ``supports[i]`` lists the set columns of row ``i``.
    """

    __slots__ = ('n_rows', 'n_cols', 'supports', '_dense')

    def __init__(self, n_rows, n_cols, supports):
        if len(supports) != n_rows:
            raise ValueError(f'{len(supports)} supports given for {n_rows} rows')
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        cleaned = []
        for i, support in enumerate(supports):
            arr = np.unique(np.asarray(support, dtype=np.int64))
            if arr.size and (arr[0] < 0 or arr[-1] >= n_cols):
                raise ValueError(f'row {i} has a column outside [0, {n_cols})')
            cleaned.append(arr)
        self.supports = cleaned
        self._dense = None

    @classmethod
    def from_dense(cls, matrix):
        bits = matrix.to_bits()
        return cls(matrix.n_rows, matrix.n_cols, [np.flatnonzero(row) for row in bits])

    def to_dense(self):
        if self._dense is None:
            bits = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
            for i, support in enumerate(self.supports):
                bits[i, support] = 1
            self._dense = BitMatrix.from_bits(bits)
        return self._dense

    @property
    def shape(self):
        return self.n_rows, self.n_cols

    def row_weights(self):
        return [int(s.size) for s in self.supports]

    def column_weights(self):
        counts = np.zeros(self.n_cols, dtype=np.int64)
        for support in self.supports:
            counts[support] += 1
        return counts

    def nnz(self):
        return sum(int(s.size) for s in self.supports)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            if other.length != self.n_cols:
                raise ValueError(f'cannot apply a {self.n_rows}x{self.n_cols} matrix to a length-{other.length} vector')
            bits = other.to_bits()
            out = np.fromiter(
                (int(bits[s].sum()) & 1 for s in self.supports), dtype=np.uint8, count=self.n_rows,
            )
            return BitVector.from_bits(out)
        if isinstance(other, (BitMatrix, SparseBitMatrix)):
            right = other.to_dense() if isinstance(other, SparseBitMatrix) else other
            return self.to_dense() @ right
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SparseBitMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            np.array_equal(a, b) for a, b in zip(self.supports, other.supports)
        )

    def __repr__(self):
        return f'SparseBitMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})'


def write_sparse(path, matrix):
    """
    Writes a matrix in the ``rows cols nnz`` format.

    Args:
        path (str | Path): Destination file.
        matrix (SparseBitMatrix | BitMatrix): Matrix to write.
    """

    if isinstance(matrix, BitMatrix):
        matrix = SparseBitMatrix.from_dense(matrix)
    supports = [s.tolist() for s in matrix.supports]
    write_text(path, format_sparse_matrix(matrix.n_rows, matrix.n_cols, supports))


def read_sparse(path):
    rows, cols, supports = parse_sparse_matrix(read_text(path))
    return SparseBitMatrix(rows, cols, supports)
