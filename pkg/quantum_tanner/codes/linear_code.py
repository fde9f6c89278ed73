"""
Classical binary linear codes used as the local component codes.
"""

from __future__ import annotations

import logging
import math
from functools import cached_property

import numpy as np

from ..gf2.bit_matrix import BitMatrix, kernel_basis, kron, row_reduce
from ..gf2.bit_vector import BitVector
from ..utils.errors import CapExceededError
from ..utils.math_utils import ensure_rng, enumerate_span, popcount_array
from ..utils.string_utils import format_dense_matrix, parse_dense_matrix, read_text, write_text

logger = logging.getLogger(__name__)

EXHAUSTIVE_DIMENSION_CAP = 24
DISTANCE_SAMPLES = 4096


class LinearCode:
    """
    A binary ``[n, k]`` code carried as a generator basis and a parity-check basis.

    Both matrices have full row rank and ``gen @ par.T == 0``. The minimum
    distance is computed on first access by exhaustive enumeration of the
    ``2**k`` codewords; the zero code has distance ``math.inf``.

    Attributes:
        length (int): Number of coordinates.
        gen (BitMatrix): ``k x n`` generator basis.
        par (BitMatrix): ``(n - k) x n`` parity-check basis.
    """

    def __init__(self, gen, par, min_dist=None):
        if gen.n_cols != par.n_cols:
            raise ValueError(f'generator length {gen.n_cols} differs from parity-check length {par.n_cols}')
        if gen.n_rows + par.n_rows != gen.n_cols:
            raise ValueError(f'dimensions {gen.n_rows} + {par.n_rows} do not add up to length {gen.n_cols}')
        if gen.n_rows and par.n_rows and not (gen @ par.T).is_zero():
            raise ValueError('generator rows are not orthogonal to the parity checks')
        self.length = gen.n_cols
        self.gen = gen
        self.par = par
        if min_dist is not None:
            self.__dict__['min_dist'] = min_dist

    @classmethod
    def from_generator(cls, gen):
        """
        Builds a code from a spanning set (rows need not be independent).

        Args:
            gen (BitMatrix | array_like): Spanning rows.

        Returns:
            LinearCode: The code with an echelon generator basis.
        """

        if not isinstance(gen, BitMatrix):
            gen = BitMatrix.from_bits(gen)
        basis, _ = row_reduce(gen)
        par = BitMatrix.from_rows(kernel_basis(basis), n_cols=gen.n_cols)
        return cls(basis, par)

    @classmethod
    def from_parity_check(cls, par):
        if not isinstance(par, BitMatrix):
            par = BitMatrix.from_bits(par)
        checks, _ = row_reduce(par)
        gen = BitMatrix.from_rows(kernel_basis(checks), n_cols=par.n_cols)
        return cls(gen, checks)

    @classmethod
    def read(cls, path):
        """
        Reads a code from a dense matrix file holding its generator matrix.
        """

        return cls.from_generator(parse_dense_matrix(read_text(path)))

    def write(self, path):
        write_text(path, format_dense_matrix(self.gen.to_bits()))

    @property
    def dimension(self):
        return self.gen.n_rows

    @property
    def rate(self):
        return self.dimension / self.length if self.length else 0.0

    def dual(self):
        return LinearCode(self.par, self.gen)

    def contains(self, v):
        if self.par.n_rows == 0:
            return True
        return not (self.par @ v)

    def syndrome(self, v):
        return self.par @ v

    def codewords(self):
        """
        All ``2**k`` codewords as packed rows indexed by message.

        Raises:
            CapExceededError: If ``k`` is above the exhaustive cap.
        """

        if self.dimension > EXHAUSTIVE_DIMENSION_CAP:
            raise CapExceededError(
                f'dimension {self.dimension} exceeds the exhaustive cap {EXHAUSTIVE_DIMENSION_CAP}'
            )
        return enumerate_span(self.gen.words)

    @cached_property
    def min_dist(self):
        return min_distance(self)

    @property
    def relative_distance(self):
        return self.min_dist / self.length if self.length else 0.0

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.length == other.length and self.canonical_basis() == other.canonical_basis()

    def __hash__(self):
        return hash(self.canonical_basis())

    def canonical_basis(self):
        return row_reduce(self.gen)[0]

    def __repr__(self):
        d = self.__dict__.get('min_dist')
        suffix = '' if d is None else f', {d}'
        return f'LinearCode([{self.length}, {self.dimension}{suffix}])'


def min_distance(code, sampled=False, rng=None, n_samples=DISTANCE_SAMPLES):
    """
    Minimum nonzero codeword weight.

    Exhaustive when ``k <= EXHAUSTIVE_DIMENSION_CAP``. Above the cap a sampled
    upper bound is returned if ``sampled`` is set: the weights of random
    message combinations together with the echelon basis rows.

    Args:
        code (LinearCode): The code.
        sampled (bool): Accept a non-certified estimate above the cap.
        rng (np.random.Generator, optional): Randomness for sampling.
        n_samples (int): Random messages to draw in sampled mode.

    Returns:
        int | float: The distance, ``math.inf`` for the zero code.

    Raises:
        CapExceededError: Above the cap without ``sampled``.

    Examples:
        >>> min_distance(repetition_code(3))
        3
    """

    k = code.dimension
    if k == 0:
        return math.inf
    if k <= EXHAUSTIVE_DIMENSION_CAP:
        weights = popcount_array(enumerate_span(code.gen.words)[1:])
        return int(weights.min())
    if not sampled:
        raise CapExceededError(f'dimension {k} exceeds the exhaustive cap {EXHAUSTIVE_DIMENSION_CAP}')
    rng = ensure_rng(rng)
    best = min(code.gen.row_weights())
    gen_bits = code.gen.to_bits()
    for _ in range(n_samples):
        message = rng.integers(0, 2, size=k, dtype=np.uint8)
        if not message.any():
            continue
        word = (message @ gen_bits) & 1
        best = min(best, int(word.sum()))
    logger.warning('distance of %r is a sampled upper bound (%d), not certified', code, best)
    return best


def tensor_code(ca, cb):
    """
    The tensor code ``C_A (x) C_B`` on ``A x B`` (coordinate ``a * |B| + b``).

    Its distance is the product of the factor distances.
    """

    gen = kron(ca.gen, cb.gen)
    code = LinearCode.from_generator(gen)
    code.__dict__['min_dist'] = ca.min_dist * cb.min_dist
    return code


def repetition_code(n):
    return LinearCode.from_generator(np.ones((1, n), dtype=np.uint8))


def parity_check_code(n):
    return LinearCode.from_parity_check(np.ones((1, n), dtype=np.uint8))


def full_code(n):
    return LinearCode(BitMatrix.identity(n), BitMatrix(0, n))


def zero_code(n):
    return LinearCode(BitMatrix(0, n), BitMatrix.identity(n))


def random_code(n, k, rng):
    """
    A uniformly drawn ``[n, k]`` code (rejection on rank).

    Args:
        n (int): Length.
        k (int): Dimension, ``0 <= k <= n``.
        rng (np.random.Generator): Source of randomness.

    Returns:
        LinearCode: The sample.
    """

    if not 0 <= k <= n:
        raise ValueError(f'dimension {k} infeasible for length {n}')
    if k == 0:
        return zero_code(n)
    while True:
        code = LinearCode.from_generator(BitMatrix.random(k, n, rng))
        if code.dimension == k:
            return code


def puncture(code, keep):
    """
    Restricts every codeword to the coordinates ``keep``.
    """

    keep = np.asarray(keep, dtype=np.int64)
    if code.dimension == 0:
        return zero_code(keep.shape[0])
    return LinearCode.from_generator(code.gen.submatrix(cols=keep))


def encode(code, message):
    """
    Encodes a message (0/1 sequence of length ``k``) into a codeword.
    """

    message = np.asarray(message, dtype=np.uint8)
    return BitVector.from_bits((message @ code.gen.to_bits()) & 1)
