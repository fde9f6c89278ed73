"""
Matrices over the group algebra ``F_2[G]``.

An entry is a subset of ``G`` stored as a 0/1 indicator, so a matrix is a
``uint8`` array of shape ``(rows, cols, |G|)``. Two conventions are fixed
here and used throughout the lifted-product code:

* ``M.T`` transposes and inverts every element, ``(M.T)[j, i] = {x^-1 : x in M[i, j]}``.
* ``flatten()`` uses the left-regular representation: element ``x`` in
  ``M[i, j]`` maps basis vector ``(j, y)`` to ``(i, x y)``.

With these, ``flatten(M @ N) == flatten(M) @ flatten(N)`` and
``flatten(M.T) == flatten(M).T``.
"""

from __future__ import annotations

import numpy as np

from ..gf2.bit_matrix import BitMatrix


class GroupAlgebraMatrix:
    """
    Attributes:
        group (FiniteGroup): ``G``.
        entries (np.ndarray): ``uint8`` indicators, ``(rows, cols, |G|)``.
    """

    __slots__ = ('group', 'entries')

    def __init__(self, group, entries):
        entries = np.asarray(entries, dtype=np.uint8)
        if entries.ndim != 3 or entries.shape[2] != group.order:
            raise ValueError(f'entries of shape {entries.shape} do not fit a group of order {group.order}')
        self.group = group
        self.entries = entries & 1

    @classmethod
    def zeros(cls, group, rows, cols):
        return cls(group, np.zeros((rows, cols, group.order), dtype=np.uint8))

    @classmethod
    def scalar(cls, group, matrix):
        """Embeds a bit matrix through ``F_2 -> F_2[G]``, bit 1 becoming the identity."""

        bits = matrix.to_bits() if isinstance(matrix, BitMatrix) else np.asarray(matrix, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError(f'expected a 2-d bit matrix, got shape {bits.shape}')
        out = cls.zeros(group, bits.shape[0], bits.shape[1])
        out.entries[:, :, group.identity] = bits
        return out

    @classmethod
    def diagonal(cls, group, elements):
        elements = [int(x) for x in elements]
        out = cls.zeros(group, len(elements), len(elements))
        for i, x in enumerate(elements):
            out.entries[i, i, x] = 1
        return out

    @classmethod
    def unit(cls, group, rows, cols, i, j, element):
        out = cls.zeros(group, rows, cols)
        out.entries[i, j, element] = 1
        return out

    @classmethod
    def from_vector(cls, group, rows, cols, bits):
        """Inverse of :meth:`to_vector`."""

        return cls(group, np.asarray(bits, dtype=np.uint8).reshape(rows, cols, group.order))

    @classmethod
    def random(cls, group, rows, cols, rng):
        return cls(group, rng.integers(0, 2, size=(rows, cols, group.order), dtype=np.uint8))

    @property
    def shape(self):
        return self.entries.shape[:2]

    @property
    def weight(self):
        return int(self.entries.sum())

    def is_zero(self):
        return not self.entries.any()

    def is_scalar(self):
        others = np.ones(self.group.order, dtype=bool)
        others[self.group.identity] = False
        return not self.entries[:, :, others].any()

    def to_scalar(self):
        """
        The bit matrix of a scalar matrix.

        Raises:
            ValueError: If some entry is not ``0`` or the identity.
        """

        if not self.is_scalar():
            raise ValueError('matrix has entries outside F_2')
        return BitMatrix.from_bits(self.entries[:, :, self.group.identity])

    def to_vector(self):
        """Indicator bits in ``(row, col, element)`` order."""

        return self.entries.reshape(-1).copy()

    def __matmul__(self, other):
        if not isinstance(other, GroupAlgebraMatrix):
            return NotImplemented
        if self.group is not other.group:
            raise ValueError('matrices over different groups')
        if self.shape[1] != other.shape[0]:
            raise ValueError(f'cannot multiply {self.shape} by {other.shape}')
        rows, cols = self.shape[0], other.shape[1]
        order = self.group.order
        # pairs[i, k, x, y]: number of j with x in M[i, j] and y in N[j, k]
        pairs = np.einsum('ijx,jky->ikxy', self.entries.astype(np.int64), other.entries.astype(np.int64))
        out = np.zeros((rows, cols, order), dtype=np.int64)
        for x in range(order):
            out[:, :, self.group.mul[x]] += pairs[:, :, x, :]
        return GroupAlgebraMatrix(self.group, (out & 1).astype(np.uint8))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f'cannot add {self.shape} and {other.shape}')
        return GroupAlgebraMatrix(self.group, self.entries ^ other.entries)

    __xor__ = __add__

    @property
    def T(self):
        return GroupAlgebraMatrix(self.group, self.entries.transpose(1, 0, 2)[:, :, self.group.inv])

    def block(self, rows=None, cols=None):
        rows = slice(None) if rows is None else rows
        cols = slice(None) if cols is None else cols
        return GroupAlgebraMatrix(self.group, self.entries[rows][:, cols])

    @staticmethod
    def vstack(blocks):
        return GroupAlgebraMatrix(blocks[0].group, np.concatenate([b.entries for b in blocks], axis=0))

    @staticmethod
    def hstack(blocks):
        return GroupAlgebraMatrix(blocks[0].group, np.concatenate([b.entries for b in blocks], axis=1))

    def flatten(self):
        """
        The ``|G|``-fold bit matrix, row ``i |G| + g`` and column ``j |G| + h``.
        """

        rows, cols = self.shape
        order = self.group.order
        bits = np.zeros((rows * order, cols * order), dtype=np.uint8)
        y = np.arange(order)
        for i, j, x in zip(*np.nonzero(self.entries)):
            bits[i * order + self.group.mul[x, y], j * order + y] ^= 1
        return BitMatrix.from_bits(bits)

    def copy(self):
        return GroupAlgebraMatrix(self.group, self.entries.copy())

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraMatrix):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f'GroupAlgebraMatrix({self.shape[0]}x{self.shape[1]} over {self.group.name}, weight={self.weight})'
