"""
Utility kernels for bit-packed GF(2) arithmetic.

Bits are stored little-endian in ``uint64`` words: coordinate ``j`` lives in
word ``j // 64`` at bit ``j % 64``. Padding bits past the logical length are
always zero, every kernel below relies on that.
"""

import numpy as np
from numba import njit

WORD_BITS = 64
DEFAULT_SEED = 0

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)


def ensure_rng(rng=None):
    """
    Returns ``rng``, or a generator seeded with ``DEFAULT_SEED`` when it is ``None``.

    Args:
        rng (np.random.Generator, optional): Caller-owned stream.

    Returns:
        np.random.Generator: A reproducible stream.
    """

    return np.random.default_rng(DEFAULT_SEED) if rng is None else rng


def word_count(n_bits):
    """
    Returns the number of 64-bit words needed to hold a bit string.

    Args:
        n_bits (int): Logical number of coordinates.

    Returns:
        int: ``ceil(n_bits / 64)``, at least 1 so empty vectors still own a word.
    """

    return max(1, (n_bits + WORD_BITS - 1) // WORD_BITS)


def pack_bits(bits):
    """
    Packs a 0/1 array into little-endian uint64 words along the last axis.

    Args:
        bits (np.ndarray): Array of 0/1 values, shape ``(..., n)``.

    Returns:
        np.ndarray: ``uint64`` array of shape ``(..., word_count(n))``.

    Examples:
        >>> pack_bits(np.array([1, 0, 1]))
        array([5], dtype=uint64)
    """

    bits = np.asarray(bits, dtype=np.uint8) & 1
    n = bits.shape[-1]
    n_words = word_count(n)
    padded = np.zeros(bits.shape[:-1] + (n_words * WORD_BITS,), dtype=np.uint8)
    padded[..., :n] = bits
    packed = np.packbits(padded, axis=-1, bitorder='little')
    return np.ascontiguousarray(packed).view('<u8').astype(np.uint64)


def unpack_bits(words, n_bits):
    """
    Inverse of :func:`pack_bits`.

    Args:
        words (np.ndarray): ``uint64`` array of shape ``(..., n_words)``.
        n_bits (int): Logical number of coordinates to keep.

    Returns:
        np.ndarray: ``uint8`` 0/1 array of shape ``(..., n_bits)``.
    """

    raw = np.ascontiguousarray(words.astype('<u8')).view(np.uint8)
    bits = np.unpackbits(raw, axis=-1, bitorder='little')
    return bits[..., :n_bits]


@njit
def popcount(word):
    """
    Counts set bits of one 64-bit word (SWAR method).

    Args:
        word (np.uint64): The word.

    Returns:
        int: Number of ones.
    """

    x = word - ((word >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    x = x + (x >> np.uint64(8))
    x = x + (x >> np.uint64(16))
    x = x + (x >> np.uint64(32))
    return int(x & np.uint64(0x7F))


@njit
def weight_words(words):
    """
    Hamming weight of a packed vector.

    Args:
        words (np.ndarray): 1-D ``uint64`` array.

    Returns:
        int: Total number of set bits.
    """

    total = 0
    for i in range(words.shape[0]):
        total += popcount(words[i])
    return total


@njit
def parity_of_and(a, b):
    """
    Returns the GF(2) inner product of two packed vectors.

    Args:
        a (np.ndarray): 1-D ``uint64`` array.
        b (np.ndarray): 1-D ``uint64`` array of the same length.

    Returns:
        int: 0 or 1.
    """

    acc = np.uint64(0)
    for i in range(a.shape[0]):
        acc ^= a[i] & b[i]
    return popcount(acc) & 1


@njit
def matvec_words(rows, vec):
    """
    Multiplies a packed matrix by a packed column vector.

    Args:
        rows (np.ndarray): ``uint64`` array ``(m, n_words)``.
        vec (np.ndarray): ``uint64`` array ``(n_words,)``.

    Returns:
        np.ndarray: ``uint8`` array of length ``m`` holding ``rows @ vec`` mod 2.
    """

    m = rows.shape[0]
    out = np.zeros(m, dtype=np.uint8)
    for i in range(m):
        out[i] = parity_of_and(rows[i], vec)
    return out


@njit
def matmul_words(left_bits, right_rows):
    """
    Multiplies two GF(2) matrices, left given as 0/1 bytes, right packed.

    Row ``i`` of the product is the XOR of the rows of ``right_rows`` selected
    by the ones of ``left_bits[i]``.

    Args:
        left_bits (np.ndarray): ``uint8`` array ``(m, k)``.
        right_rows (np.ndarray): ``uint64`` array ``(k, n_words)``.

    Returns:
        np.ndarray: ``uint64`` array ``(m, n_words)``.
    """

    m = left_bits.shape[0]
    k = left_bits.shape[1]
    n_words = right_rows.shape[1]
    out = np.zeros((m, n_words), dtype=np.uint64)
    for i in range(m):
        for j in range(k):
            if left_bits[i, j]:
                for w in range(n_words):
                    out[i, w] ^= right_rows[j, w]
    return out


@njit
def row_reduce_words(rows, n_cols, pivot_limit):
    """
    Reduced row echelon form over GF(2), leftmost pivot first.

    Pivots are only searched among the first ``pivot_limit`` columns, which
    lets callers reduce an augmented ``[M | b]`` without pivoting on ``b``.
    The reduction happens in place.

    Args:
        rows (np.ndarray): ``uint64`` array ``(m, n_words)``, modified in place.
        n_cols (int): Logical column count.
        pivot_limit (int): Columns eligible as pivots.

    Returns:
        np.ndarray: ``int64`` array of pivot columns, one per nonzero row.
    """

    m = rows.shape[0]
    n_words = rows.shape[1]
    pivots = np.empty(min(m, n_cols), dtype=np.int64)
    rank = 0
    for col in range(min(n_cols, pivot_limit)):
        if rank == m:
            break
        w = col >> 6
        mask = np.uint64(1) << np.uint64(col & 63)
        pivot = -1
        for r in range(rank, m):
            if rows[r, w] & mask:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for k in range(n_words):
                tmp = rows[rank, k]
                rows[rank, k] = rows[pivot, k]
                rows[pivot, k] = tmp
        for r in range(m):
            if r != rank and (rows[r, w] & mask):
                for k in range(n_words):
                    rows[r, k] ^= rows[rank, k]
        pivots[rank] = col
        rank += 1
    return pivots[:rank]


@njit
def reduce_against(vec, reduced_rows, pivots):
    """
    Reduces a packed vector against an echelon basis.

    Args:
        vec (np.ndarray): ``uint64`` vector, copied before reduction.
        reduced_rows (np.ndarray): Echelon rows from :func:`row_reduce_words`.
        pivots (np.ndarray): Their pivot columns.

    Returns:
        np.ndarray: The residual; zero iff ``vec`` lies in the row space.
    """

    out = vec.copy()
    for r in range(pivots.shape[0]):
        col = pivots[r]
        if out[col >> 6] & (np.uint64(1) << np.uint64(col & 63)):
            for k in range(out.shape[0]):
                out[k] ^= reduced_rows[r, k]
    return out


_BYTE_WEIGHTS = np.array([bin(i).count('1') for i in range(256)], dtype=np.int64)


def popcount_array(words):
    """
    Row-wise Hamming weights of packed vectors, vectorized over leading axes.

    Args:
        words (np.ndarray): ``uint64`` array ``(..., n_words)``.

    Returns:
        np.ndarray: ``int64`` array of shape ``words.shape[:-1]``.
    """

    raw = np.ascontiguousarray(words.astype('<u8')).view(np.uint8)
    return _BYTE_WEIGHTS[raw].sum(axis=-1)


def enumerate_span(rows):
    """
    Lists every GF(2) combination of the given packed rows.

    Entry ``m`` of the output is the XOR of the rows selected by the bits of
    ``m``, so the array is indexed by message.

    Args:
        rows (np.ndarray): ``uint64`` array ``(k, n_words)``.

    Returns:
        np.ndarray: ``uint64`` array ``(2**k, n_words)``.
    """

    span = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for i in range(rows.shape[0]):
        span = np.concatenate([span, span ^ rows[i]], axis=0)
    return span
