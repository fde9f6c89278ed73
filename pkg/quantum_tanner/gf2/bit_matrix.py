"""
Dense bit-packed matrices over GF(2) and the elimination routines built on them.

Every rank, kernel, solve and membership query goes through :func:`row_reduce`,
which pivots on the leftmost available column so results are reproducible.
"""

from __future__ import annotations

import numpy as np

from ..utils.math_utils import (
    matmul_words,
    matvec_words,
    pack_bits,
    reduce_against,
    row_reduce_words,
    unpack_bits,
    weight_words,
    word_count,
)
from ..utils.errors import RankDeficiencyError
from ..utils.string_utils import format_bit_string
from .bit_vector import BitVector


class BitMatrix:
    """
    A ``rows x cols`` GF(2) matrix, each row packed into uint64 words.
    """

    __slots__ = ('words', 'n_rows', 'n_cols')

    def __init__(self, n_rows, n_cols, words=None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError(f'unexpected matrix shape ({n_rows}, {n_cols})')
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        expected = (self.n_rows, word_count(self.n_cols))
        if words is None:
            words = np.zeros(expected, dtype=np.uint64)
        elif words.shape != expected:
            raise ValueError(f'word array of shape {words.shape} does not fit {self.n_rows}x{self.n_cols}')
        self.words = words

    @classmethod
    def zeros(cls, n_rows, n_cols):
        return cls(n_rows, n_cols)

    @classmethod
    def identity(cls, n):
        return cls.from_bits(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_bits(cls, bits):
        """
        Builds a matrix from a 2-D 0/1 array.

        Args:
            bits (array_like): Shape ``(rows, cols)``.

        Returns:
            BitMatrix: The packed matrix.

        Examples:
            >>> BitMatrix.from_bits([[1, 1, 0], [0, 1, 1]]).shape
            (2, 3)
        """

        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError(f'expected a 2-D array, got {bits.ndim} dimensions')
        if bits.shape[0] == 0:
            return cls(0, bits.shape[1])
        return cls(bits.shape[0], bits.shape[1], pack_bits(bits))

    @classmethod
    def from_rows(cls, rows, n_cols=None):
        """
        Stacks BitVectors (or 0/1 sequences) as rows.

        Args:
            rows (iterable): Row vectors, all of one length.
            n_cols (int, optional): Column count, required when ``rows`` is empty.

        Returns:
            BitMatrix: The stacked matrix.
        """

        rows = [r if isinstance(r, BitVector) else BitVector.from_bits(r) for r in rows]
        if not rows:
            if n_cols is None:
                raise ValueError('n_cols is required for an empty row list')
            return cls(0, n_cols)
        width = rows[0].length if n_cols is None else n_cols
        for r in rows:
            if r.length != width:
                raise ValueError(f'row of length {r.length} in a matrix of width {width}')
        return cls(len(rows), width, np.stack([r.words for r in rows]).astype(np.uint64))

    @classmethod
    def random(cls, n_rows, n_cols, rng):
        return cls.from_bits(rng.integers(0, 2, size=(n_rows, n_cols), dtype=np.uint8))

    @property
    def shape(self):
        return self.n_rows, self.n_cols

    def to_bits(self):
        if self.n_rows == 0:
            return np.zeros((0, self.n_cols), dtype=np.uint8)
        return unpack_bits(self.words, self.n_cols)

    def row(self, index):
        return BitVector(self.n_cols, self.words[index].copy())

    def rows(self):
        return [self.row(i) for i in range(self.n_rows)]

    def copy(self):
        return BitMatrix(self.n_rows, self.n_cols, self.words.copy())

    def weight(self):
        return sum(weight_words(self.words[i]) for i in range(self.n_rows))

    def row_weights(self):
        return [weight_words(self.words[i]) for i in range(self.n_rows)]

    def column_weights(self):
        return self.to_bits().sum(axis=0, dtype=np.int64)

    def is_zero(self):
        return not self.words.any()

    def transpose(self):
        return BitMatrix.from_bits(self.to_bits().T)

    @property
    def T(self):
        return self.transpose()

    def submatrix(self, rows=None, cols=None):
        bits = self.to_bits()
        if rows is not None:
            bits = bits[np.asarray(rows, dtype=np.int64)]
        if cols is not None:
            bits = bits[:, np.asarray(cols, dtype=np.int64)]
        return BitMatrix.from_bits(bits)

    @staticmethod
    def hstack(blocks):
        blocks = list(blocks)
        heights = {b.n_rows for b in blocks}
        if len(heights) != 1:
            raise ValueError(f'hstack of blocks with row counts {sorted(heights)}')
        return BitMatrix.from_bits(np.hstack([b.to_bits() for b in blocks]))

    @staticmethod
    def vstack(blocks):
        blocks = list(blocks)
        widths = {b.n_cols for b in blocks}
        if len(widths) != 1:
            raise ValueError(f'vstack of blocks with column counts {sorted(widths)}')
        width = widths.pop()
        parts = [b.words for b in blocks if b.n_rows]
        if not parts:
            return BitMatrix(0, width)
        stacked = np.concatenate(parts, axis=0)
        return BitMatrix(stacked.shape[0], width, stacked)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            if other.length != self.n_cols:
                raise ValueError(f'cannot apply a {self.n_rows}x{self.n_cols} matrix to a length-{other.length} vector')
            if self.n_rows == 0:
                return BitVector(0)
            return BitVector.from_bits(matvec_words(self.words, other.words))
        if isinstance(other, BitMatrix):
            if other.n_rows != self.n_cols:
                raise ValueError(f'shape mismatch {self.shape} @ {other.shape}')
            if self.n_rows == 0:
                return BitMatrix(0, other.n_cols)
            if other.n_rows == 0:
                return BitMatrix(self.n_rows, other.n_cols)
            return BitMatrix(self.n_rows, other.n_cols, matmul_words(self.to_bits(), other.words))
        return NotImplemented

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f'shape mismatch {self.shape} + {other.shape}')
        return BitMatrix(self.n_rows, self.n_cols, self.words ^ other.words)

    __xor__ = __add__

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.shape, self.words.tobytes()))

    def __repr__(self):
        body = ', '.join(f"'{format_bit_string(r)}'" for r in self.to_bits())
        return f'BitMatrix({self.n_rows}x{self.n_cols}: [{body}])'


def row_reduce(matrix):
    """
    Reduced row echelon form with deterministic leftmost pivots.

    Args:
        matrix (BitMatrix): Input, left untouched.

    Returns:
        tuple: ``(R, pivots)`` where ``R`` holds the ``rank`` nonzero echelon
        rows and ``pivots[i]`` is the pivot column of row ``i``.
    """

    words = matrix.words.copy()
    if matrix.n_rows == 0:
        return BitMatrix(0, matrix.n_cols), np.zeros(0, dtype=np.int64)
    pivots = row_reduce_words(words, matrix.n_cols, matrix.n_cols)
    reduced = words[:pivots.shape[0]].copy()
    return BitMatrix(pivots.shape[0], matrix.n_cols, reduced), pivots.copy()


def rank(matrix):
    return int(row_reduce(matrix)[1].shape[0])


def kernel_basis(matrix):
    """
    Basis of the right kernel ``{v : M v = 0}``.

    One vector per non-pivot column ``f``, with a one at ``f`` and the
    back-substituted pivot coordinates; ordered by ascending ``f``.

    Args:
        matrix (BitMatrix): ``rows x cols`` matrix.

    Returns:
        list: ``cols - rank`` independent BitVectors.
    """

    reduced, pivots = row_reduce(matrix)
    n = matrix.n_cols
    reduced_bits = reduced.to_bits()
    pivot_set = set(int(p) for p in pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = np.zeros(n, dtype=np.uint8)
        v[free] = 1
        if pivots.shape[0]:
            v[pivots] = reduced_bits[:, free]
        basis.append(BitVector.from_bits(v))
    return basis


def solve(matrix, b):
    """
    Finds some ``x`` with ``M x = b``.

    Args:
        matrix (BitMatrix): ``rows x cols`` system matrix.
        b (BitVector): Right-hand side of length ``rows``.

    Returns:
        BitVector or None: A solution (free coordinates set to zero), or
        ``None`` when ``b`` is outside the column space.
    """

    if b.length != matrix.n_rows:
        raise ValueError(f'right-hand side of length {b.length} for {matrix.n_rows} equations')
    n = matrix.n_cols
    if matrix.n_rows == 0:
        return BitVector(n)
    augmented = np.hstack([matrix.to_bits(), b.to_bits()[:, None]])
    words = pack_bits(augmented)
    pivots = row_reduce_words(words, n + 1, n)
    reduced = unpack_bits(words, n + 1)
    rank_ = pivots.shape[0]
    if reduced[rank_:, n].any():
        return None
    x = np.zeros(n, dtype=np.uint8)
    if rank_:
        x[pivots] = reduced[:rank_, n]
    return BitVector.from_bits(x)


class RowSpace:
    """
    Cached echelon form of a matrix, for repeated row-space membership tests.
    """

    def __init__(self, matrix):
        self.n_cols = matrix.n_cols
        reduced, self.pivots = row_reduce(matrix)
        self.rows = reduced.words
        self.rank = int(self.pivots.shape[0])

    def residual(self, v):
        if v.length != self.n_cols:
            raise ValueError(f'vector of length {v.length} against rows of length {self.n_cols}')
        if self.rank == 0:
            return v.copy()
        return BitVector(self.n_cols, reduce_against(v.words, self.rows, self.pivots))

    def __contains__(self, v):
        return not self.residual(v)


def in_row_space(matrix, v):
    return v in RowSpace(matrix)


def kron(left, right):
    """
    Kronecker product; row ``i*r + j`` is ``left[i] (x) right[j]``.
    """

    return BitMatrix.from_bits(np.kron(left.to_bits(), right.to_bits()))


def inverse(matrix):
    """
    Inverse of a square full-rank matrix.

    Raises:
        RankDeficiencyError: If the matrix is singular or not square.
    """

    n = matrix.n_rows
    if matrix.n_cols != n:
        raise RankDeficiencyError(f'cannot invert a {n}x{matrix.n_cols} matrix')
    if n == 0:
        return BitMatrix(0, 0)
    words = pack_bits(np.hstack([matrix.to_bits(), np.eye(n, dtype=np.uint8)]))
    pivots = row_reduce_words(words, 2 * n, n)
    if pivots.shape[0] != n:
        raise RankDeficiencyError(f'matrix has rank {pivots.shape[0]} < {n}')
    return BitMatrix.from_bits(unpack_bits(words, 2 * n)[:, n:])
