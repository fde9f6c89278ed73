"""
Dense bit-packed vectors over GF(2).
"""

from __future__ import annotations

import numpy as np

from ..utils.math_utils import pack_bits, unpack_bits, weight_words, parity_of_and, word_count
from ..utils.string_utils import format_bit_string


def int_to_bits(value, n_bits):
    """
    Expands a Python int bitmask into a 0/1 array (bit ``k`` -> entry ``k``).

    Args:
        value (int): Non-negative bitmask.
        n_bits (int): Output length.

    Returns:
        np.ndarray: ``uint8`` array of length ``n_bits``.

    Examples:
        >>> int_to_bits(6, 4)
        array([0, 1, 1, 0], dtype=uint8)
    """

    n_bytes = max(1, (n_bits + 7) // 8)
    raw = np.frombuffer(int(value).to_bytes(n_bytes, 'little'), dtype=np.uint8)
    return np.unpackbits(raw, bitorder='little')[:n_bits]


def bits_to_int(bits):
    """
    Packs a 0/1 array into a Python int bitmask; inverse of :func:`int_to_bits`.
    """

    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder='little')
    return int.from_bytes(packed.tobytes(), 'little')


class BitVector:
    """
    A length-``n`` vector over GF(2) stored in little-endian uint64 words.

    Instances are treated as values; only the in-place helpers (``flip``,
    ``__ixor__``, ``xor_mask``) mutate, and only on vectors the caller owns.
    """

    __slots__ = ('words', 'length')

    def __init__(self, length, words=None):
        if length < 0:
            raise ValueError(f'unexpected vector length {length}')
        self.length = int(length)
        if words is None:
            words = np.zeros(word_count(self.length), dtype=np.uint64)
        elif words.shape != (word_count(self.length),):
            raise ValueError(f'word array of shape {words.shape} does not fit length {length}')
        self.words = words

    @classmethod
    def zeros(cls, length):
        return cls(length)

    @classmethod
    def from_bits(cls, bits):
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        return cls(bits.shape[0], pack_bits(bits))

    @classmethod
    def from_support(cls, length, support):
        bits = np.zeros(length, dtype=np.uint8)
        support = np.asarray(list(support), dtype=np.int64)
        if support.size and (support.min() < 0 or support.max() >= length):
            raise ValueError(f'support index outside [0, {length})')
        # repeated indices cancel in pairs
        np.bitwise_xor.at(bits, support, np.uint8(1))
        return cls.from_bits(bits)

    @classmethod
    def from_int(cls, length, value):
        return cls.from_bits(int_to_bits(value, length))

    @classmethod
    def random(cls, length, rng, weight=None):
        """
        Draws a uniformly random vector, or a uniform one of a fixed weight.

        Args:
            length (int): Vector length.
            rng (np.random.Generator): Source of randomness.
            weight (int, optional): Exact Hamming weight.

        Returns:
            BitVector: The sample.
        """

        if weight is None:
            return cls.from_bits(rng.integers(0, 2, size=length, dtype=np.uint8))
        if not 0 <= weight <= length:
            raise ValueError(f'weight {weight} infeasible for length {length}')
        return cls.from_support(length, rng.choice(length, size=weight, replace=False))

    def to_bits(self):
        return unpack_bits(self.words, self.length)

    def to_int(self):
        return bits_to_int(self.to_bits())

    def support(self):
        return np.flatnonzero(self.to_bits())

    def weight(self):
        return weight_words(self.words)

    def copy(self):
        return BitVector(self.length, self.words.copy())

    def dot(self, other):
        self._check_length(other)
        return parity_of_and(self.words, other.words)

    def flip(self, index):
        if not 0 <= index < self.length:
            raise IndexError(index)
        self.words[index >> 6] ^= np.uint64(1) << np.uint64(index & 63)

    def gather(self, indices):
        """
        Reads the coordinates ``indices`` into a Python int bitmask.

        Bit ``k`` of the result is coordinate ``indices[k]``; this is how
        local views are extracted.

        Args:
            indices (np.ndarray): ``int64`` coordinate indices.

        Returns:
            int: The packed local word.
        """

        idx = np.asarray(indices, dtype=np.int64)
        bits = (self.words[idx >> 6] >> (idx & 63).astype(np.uint64)) & np.uint64(1)
        return bits_to_int(bits.astype(np.uint8))

    def weight_at(self, indices):
        return bin(self.gather(indices)).count('1')

    def xor_mask(self, indices, mask):
        """
        Flips coordinate ``indices[k]`` for every set bit ``k`` of ``mask``.

        Args:
            indices (np.ndarray): ``int64`` coordinate indices.
            mask (int): Local word to add.
        """

        if not mask:
            return
        idx = np.asarray(indices, dtype=np.int64)
        selected = idx[int_to_bits(mask, idx.shape[0]).astype(bool)]
        np.bitwise_xor.at(self.words, selected >> 6, np.uint64(1) << (selected & 63).astype(np.uint64))

    def _check_length(self, other):
        if self.length != other.length:
            raise ValueError(f'length mismatch {self.length} != {other.length}')

    def __len__(self):
        return self.length

    def __getitem__(self, index):
        if not 0 <= index < self.length:
            raise IndexError(index)
        return int((self.words[index >> 6] >> np.uint64(index & 63)) & np.uint64(1))

    def __xor__(self, other):
        self._check_length(other)
        return BitVector(self.length, self.words ^ other.words)

    __add__ = __xor__

    def __ixor__(self, other):
        self._check_length(other)
        self.words ^= other.words
        return self

    def __bool__(self):
        return bool(self.words.any())

    def __eq__(self, other):
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.length, self.words.tobytes()))

    def __repr__(self):
        return f"BitVector('{format_bit_string(self.to_bits())}')"
