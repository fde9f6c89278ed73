"""
The dual tensor code ``C_A (x) F^B + F^A (x) C_B`` and its coset-leader decoder.

Coordinates of ``A x B`` are numbered row-major, ``a * |B| + b``. A *column*
is the set of squares with fixed ``b`` and carries ``C_A`` codewords; a *row*
has fixed ``a`` and carries ``C_B`` codewords. Local words are Python ints
with bit ``a * |B| + b`` set for each coordinate in the support.
"""

from __future__ import annotations

import logging

import numpy as np

from ..gf2.bit_matrix import BitMatrix, inverse, kron, row_reduce
from ..gf2.bit_vector import BitVector, bits_to_int, int_to_bits
from ..utils.errors import CapExceededError, ConstructionError, InconsistentSyndromeError
from ..utils.math_utils import enumerate_span, unpack_bits

logger = logging.getLogger(__name__)

COSET_TABLE_CAP = 20
LEADER_TABLE_MAX_LENGTH = 64
_CHUNK = 1 << 14


def _as_mask(x):
    return x.to_int() if isinstance(x, BitVector) else int(x)


def _reversed_coordinate_bits(length):
    return np.uint64(1) << (np.uint64(length - 1) - np.arange(length, dtype=np.uint64))


def _reverse_masks(masks, reversed_bits):
    out = np.zeros_like(masks)
    for j, bit in enumerate(reversed_bits):
        out |= ((masks & bit) != 0).astype(np.uint64) << np.uint64(j)
    return out


class DualTensorCode:
    """
    Dual tensor code of a component pair, with a complete coset-leader table.

    Attributes:
        code_a (LinearCode): Column code ``C_A``.
        code_b (LinearCode): Row code ``C_B``.
        par (BitMatrix): Checks ``C_A^perp (x) C_B^perp``; check ``c * r_B + d``
            is row ``c`` of ``code_a.par`` tensored with row ``d`` of ``code_b.par``.
        dimension (int): ``k_A |B| + |A| k_B - k_A k_B``.
        leaders (np.ndarray | None): ``uint64`` coset leader per syndrome.
    """

    def __init__(self, code_a, code_b, build_table=True):
        self.code_a = code_a
        self.code_b = code_b
        self.n_a = code_a.length
        self.n_b = code_b.length
        self.length = self.n_a * self.n_b
        self.par = kron(code_a.par, code_b.par)
        self.syndrome_dim = self.par.n_rows
        k_a, k_b = code_a.dimension, code_b.dimension
        self.dimension = k_a * self.n_b + self.n_a * k_b - k_a * k_b

        par_bits = self.par.to_bits()
        self._contrib = [bits_to_int(par_bits[:, j]) for j in range(self.length)]

        self._column_words_a = [bits_to_int(w) for w in unpack_bits(enumerate_span(code_a.gen.words), self.n_a)[1:]]
        self._row_words_b = [bits_to_int(w) for w in unpack_bits(enumerate_span(code_b.gen.words), self.n_b)[1:]]

        self._build_split()
        self.leaders = None
        if build_table:
            self.build_leaders()

    def _build_split(self):
        # independent generators: C_A (x) F^B, then e_j (x) C_B for rows j off the C_A pivots
        n_a, n_b = self.n_a, self.n_b
        column_gens = kron(self.code_a.gen, BitMatrix.identity(n_b))
        _, pivots_a = row_reduce(self.code_a.gen)
        pivot_set = {int(p) for p in pivots_a}
        free_rows = [j for j in range(n_a) if j not in pivot_set]
        complement = BitMatrix.from_bits(np.eye(n_a, dtype=np.uint8)[free_rows]) if free_rows else BitMatrix(0, n_a)
        row_gens = kron(complement, self.code_b.gen) if free_rows else BitMatrix(0, self.length)
        basis = BitMatrix.vstack([column_gens, row_gens])
        self.basis = basis
        self._info_set = []
        self._split_columns = []
        self._split_rows = []
        if basis.n_rows == 0:
            return
        _, info = row_reduce(basis)
        if info.shape[0] != basis.n_rows:
            raise ConstructionError('dual tensor generators are dependent')
        m_inv = inverse(basis.submatrix(cols=info))
        k_c = column_gens.n_rows
        inv_bits = m_inv.to_bits()
        col_map = BitMatrix.from_bits(inv_bits[:, :k_c]) @ column_gens if k_c else BitMatrix(basis.n_rows, self.length)
        row_map = BitMatrix.from_bits(inv_bits[:, k_c:]) @ row_gens if row_gens.n_rows else BitMatrix(basis.n_rows, self.length)
        self._info_set = [int(j) for j in info]
        self._split_columns = [bits_to_int(r) for r in col_map.to_bits()]
        self._split_rows = [bits_to_int(r) for r in row_map.to_bits()]

    def build_leaders(self):
        """
        Fills the coset-leader table by breadth-first search over weight.

        Layer ``w + 1`` extends the layer-``w`` leaders by one coordinate. Among
        the candidates reaching a new syndrome the one with the
        lexicographically smallest sorted support wins, so every entry is the
        first minimum-weight coset member an enumeration of supports in
        ``itertools.combinations`` order would meet. Dropping the largest
        coordinate of such a leader gives the leader one layer down, which keeps
        the layered search exact.

        Raises:
            CapExceededError: If the syndrome dimension exceeds ``COSET_TABLE_CAP``
                or the local length exceeds 64.
        """

        s = self.syndrome_dim
        if s > COSET_TABLE_CAP:
            raise CapExceededError(f'coset table needs 2^{s} entries, cap is 2^{COSET_TABLE_CAP}')
        if self.length > LEADER_TABLE_MAX_LENGTH:
            raise CapExceededError(f'local length {self.length} does not fit a 64-bit leader table')
        size = 1 << s
        # leaders are kept bit-reversed: coordinate j sits at bit length - 1 - j,
        # so the largest reversed mask has the smallest support
        leaders = np.zeros(size, dtype=np.uint64)
        filled = np.zeros(size, dtype=bool)
        filled[0] = True
        n_filled = 1
        contrib = np.array(self._contrib, dtype=np.int64)
        reversed_bits = _reversed_coordinate_bits(self.length)
        frontier_syn = np.zeros(1, dtype=np.int64)
        frontier_lead = np.zeros(1, dtype=np.uint64)
        weight = 0
        while n_filled < size and frontier_syn.size:
            best = np.zeros(size, dtype=np.uint64)
            for start in range(0, frontier_syn.size, _CHUNK):
                syn = (frontier_syn[start:start + _CHUNK, None] ^ contrib[None, :]).ravel()
                lead = (frontier_lead[start:start + _CHUNK, None] | reversed_bits[None, :]).ravel()
                fresh = ~filled[syn]
                np.maximum.at(best, syn[fresh], lead[fresh])
            reached = np.flatnonzero((best != 0) & ~filled)
            leaders[reached] = best[reached]
            filled[reached] = True
            n_filled += reached.size
            frontier_syn, frontier_lead = reached.astype(np.int64), best[reached]
            weight += 1
        if n_filled < size:
            raise InconsistentSyndromeError('parity checks are not full rank; some syndromes are unreachable')
        logger.debug('coset table for %r: %d syndromes, max leader weight %d', self, size, weight)
        self.leaders = _reverse_masks(leaders, reversed_bits)

    def syndrome(self, x):
        """
        Syndrome under ``par``; a BitVector for BitVector input, an int for int input.
        """

        s = self.syndrome_of(_as_mask(x))
        if isinstance(x, BitVector):
            return BitVector.from_int(self.syndrome_dim, s)
        return s

    def syndrome_of(self, mask):
        s = 0
        j = 0
        while mask:
            if mask & 1:
                s ^= self._contrib[j]
            mask >>= 1
            j += 1
        return s

    def leader_for_syndrome(self, syndrome):
        if self.leaders is None:
            self.build_leaders()
        return int(self.leaders[syndrome])

    def decode_mask(self, mask):
        return self.leader_for_syndrome(self.syndrome_of(mask))

    def contains(self, x):
        return self.syndrome_of(_as_mask(x)) == 0

    def split_mask(self, mask):
        """
        Splits a codeword mask into ``(c, r)``: columns in ``C_A``, rows in ``C_B``.

        Raises:
            InconsistentSyndromeError: If ``mask`` is not a dual tensor codeword.
        """

        c = r = 0
        for t, j in enumerate(self._info_set):
            if (mask >> j) & 1:
                c ^= self._split_columns[t]
                r ^= self._split_rows[t]
        if c ^ r != mask:
            raise InconsistentSyndromeError('local word is not a dual tensor codeword')
        return c, r

    def split(self, x):
        c, r = self.split_mask(_as_mask(x))
        return BitVector.from_int(self.length, c), BitVector.from_int(self.length, r)

    def grid(self, x):
        return int_to_bits(_as_mask(x), self.length).reshape(self.n_a, self.n_b)

    def from_grid(self, grid):
        return bits_to_int(np.asarray(grid, dtype=np.uint8).ravel())

    def nonzero_rows(self, x):
        return [int(a) for a in np.flatnonzero(self.grid(x).any(axis=1))]

    def nonzero_columns(self, x):
        return [int(b) for b in np.flatnonzero(self.grid(x).any(axis=0))]

    def row_mask(self, a):
        return ((1 << self.n_b) - 1) << (a * self.n_b)

    def column_mask(self, b):
        return sum(1 << (a * self.n_b + b) for a in range(self.n_a))

    def place_row(self, a, word_b):
        return int(word_b) << (a * self.n_b)

    def place_column(self, b, word_a):
        return sum(1 << (a * self.n_b + b) for a in range(self.n_a) if (word_a >> a) & 1)

    @property
    def column_words(self):
        """Nonzero ``C_A`` codewords as ints over ``|A|`` bits."""

        return self._column_words_a

    @property
    def row_words(self):
        """Nonzero ``C_B`` codewords as ints over ``|B|`` bits."""

        return self._row_words_b

    def column_word(self, x, b):
        """Column ``b`` of a local word, as an int over ``|A|`` bits."""

        mask = _as_mask(x)
        return sum(1 << a for a in range(self.n_a) if (mask >> (a * self.n_b + b)) & 1)

    def row_word(self, x, a):
        return (_as_mask(x) >> (a * self.n_b)) & ((1 << self.n_b) - 1)

    def row_codewords(self, a):
        """Nonzero words of ``F^A (x) C_B`` supported on row ``a``."""

        return [self.place_row(a, w) for w in self._row_words_b]

    def column_codewords(self, b):
        """Nonzero words of ``C_A (x) F^B`` supported on column ``b``."""

        return [self.place_column(b, w) for w in self._column_words_a]

    def __repr__(self):
        return f'DualTensorCode({self.code_a!r}, {self.code_b!r})'


def dual_tensor_code(ca, cb):
    return DualTensorCode(ca, cb)


def coset_leader_decode(dt, x):
    """
    Minimum-weight error with the same syndrome as ``x``.

    Args:
        dt (DualTensorCode): The local code.
        x (BitVector): Local word on ``A x B``.

    Returns:
        BitVector: A coset leader ``e`` with ``x + e`` in the code.
    """

    if x.length != dt.length:
        raise ValueError(f'local word of length {x.length}, expected {dt.length}')
    return BitVector.from_int(dt.length, dt.decode_mask(x.to_int()))


def row_norm(dt, r):
    """Number of nonzero rows of a local word."""

    return len(dt.nonzero_rows(r))


def column_norm(dt, c):
    """Number of nonzero columns of a local word."""

    return len(dt.nonzero_columns(c))
