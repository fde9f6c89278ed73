import numpy as np
import pytest

from quantum_tanner.gf2.bit_matrix import (
    BitMatrix,
    RowSpace,
    in_row_space,
    inverse,
    kernel_basis,
    kron,
    rank,
    row_reduce,
    solve,
)
from quantum_tanner.gf2.bit_vector import BitVector, bits_to_int, int_to_bits
from quantum_tanner.gf2.sparse import SparseBitMatrix, read_sparse, write_sparse
from quantum_tanner.utils.errors import RankDeficiencyError
from quantum_tanner.utils.math_utils import pack_bits, popcount, unpack_bits, word_count


def _textbook_rank(bits):
    m = np.array(bits, dtype=np.uint8) % 2
    r = 0
    for c in range(m.shape[1]):
        rows = [i for i in range(r, m.shape[0]) if m[i, c]]
        if not rows:
            continue
        m[[r, rows[0]]] = m[[rows[0], r]]
        for i in range(m.shape[0]):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return r


@pytest.mark.parametrize('n_bits, expected', [
    (0, 1),
    (1, 1),
    (64, 1),
    (65, 2),
    (200, 4),
])
def test_gf2_word_count(n_bits, expected):
    assert word_count(n_bits) == expected


def test_gf2_pack_unpack_across_word_boundary(rng):
    bits = rng.integers(0, 2, size=(3, 130), dtype=np.uint8)
    assert np.array_equal(unpack_bits(pack_bits(bits), 130), bits)


@pytest.mark.parametrize('word, expected', [
    (0, 0),
    (1, 1),
    (0xFF, 8),
    (2 ** 64 - 1, 64),
])
def test_gf2_popcount(word, expected):
    assert popcount(np.uint64(word)) == expected


def test_gf2_int_bits_conversion():
    assert int_to_bits(6, 4).tolist() == [0, 1, 1, 0]
    assert bits_to_int([0, 1, 1, 0]) == 6


def test_gf2_vector_support_weight_and_flip():
    v = BitVector.from_support(100, [0, 63, 64, 99])
    assert v.weight() == 4
    assert v.support().tolist() == [0, 63, 64, 99]
    v.flip(64)
    assert v[64] == 0
    assert v.weight() == 3


def test_gf2_vector_repeated_support_cancels():
    assert not BitVector.from_support(10, [3, 3])


def test_gf2_vector_gather_and_xor_mask():
    v = BitVector.zeros(70)
    indices = np.array([5, 66, 2])
    v.xor_mask(indices, 0b101)
    assert v.support().tolist() == [2, 5]
    assert v.gather(indices) == 0b101
    assert v.weight_at(indices) == 2


def test_gf2_vector_random_fixed_weight(rng):
    v = BitVector.random(50, rng, weight=7)
    assert v.weight() == 7
    with pytest.raises(ValueError):
        BitVector.random(5, rng, weight=6)


def test_gf2_vector_length_mismatch():
    with pytest.raises(ValueError):
        BitVector.zeros(3) ^ BitVector.zeros(4)


def test_gf2_vector_dot():
    a = BitVector.from_bits([1, 1, 0, 1])
    b = BitVector.from_bits([1, 0, 1, 1])
    assert a.dot(b) == 0
    assert a.dot(a) == 1


def test_gf2_matrix_matmul_matches_numpy(rng):
    a = rng.integers(0, 2, size=(7, 70), dtype=np.uint8)
    b = rng.integers(0, 2, size=(70, 9), dtype=np.uint8)
    product = BitMatrix.from_bits(a) @ BitMatrix.from_bits(b)
    assert np.array_equal(product.to_bits(), (a.astype(int) @ b.astype(int)) % 2)


def test_gf2_matrix_vector_product(rng):
    a = rng.integers(0, 2, size=(5, 12), dtype=np.uint8)
    x = rng.integers(0, 2, size=12, dtype=np.uint8)
    out = BitMatrix.from_bits(a) @ BitVector.from_bits(x)
    assert np.array_equal(out.to_bits(), (a.astype(int) @ x) % 2)


def test_gf2_matrix_transpose_and_stack():
    m = BitMatrix.from_bits([[1, 0, 1], [0, 1, 1]])
    assert m.T.shape == (3, 2)
    assert np.array_equal(m.T.to_bits(), m.to_bits().T)
    assert BitMatrix.vstack([m, m]).shape == (4, 3)
    assert BitMatrix.hstack([m, m]).shape == (2, 6)
    with pytest.raises(ValueError):
        BitMatrix.vstack([m, BitMatrix.zeros(1, 4)])


@pytest.mark.parametrize('shape', [(4, 4), (6, 10), (10, 6), (3, 130)])
def test_gf2_rank_matches_textbook_elimination(rng, shape):
    for _ in range(20):
        bits = rng.integers(0, 2, size=shape, dtype=np.uint8)
        assert rank(BitMatrix.from_bits(bits)) == _textbook_rank(bits)


def test_gf2_row_reduce_leftmost_pivots():
    m = BitMatrix.from_bits([[0, 1, 1], [0, 1, 0], [0, 0, 1]])
    reduced, pivots = row_reduce(m)
    assert pivots.tolist() == [1, 2]
    assert reduced.to_bits().tolist() == [[0, 1, 0], [0, 0, 1]]


def test_gf2_kernel_basis_is_kernel(rng):
    for _ in range(10):
        m = BitMatrix.random(5, 12, rng)
        basis = kernel_basis(m)
        assert len(basis) == 12 - rank(m)
        for v in basis:
            assert not (m @ v)
        assert rank(BitMatrix.from_rows(basis, n_cols=12)) == len(basis)


def test_gf2_solve_consistent_and_inconsistent():
    m = BitMatrix.from_bits([[1, 1, 0], [0, 1, 1]])
    b = BitVector.from_bits([1, 0])
    x = solve(m, b)
    assert m @ x == b
    singular = BitMatrix.from_bits([[1, 1], [1, 1]])
    assert solve(singular, BitVector.from_bits([1, 0])) is None


def test_gf2_row_space_membership(rng):
    m = BitMatrix.random(4, 10, rng)
    space = RowSpace(m)
    combo = m.row(0) ^ m.row(2)
    assert combo in space
    assert in_row_space(m, combo)
    if rank(m) < 10:
        outside = next(
            BitVector.from_support(10, [j]) for j in range(10)
            if rank(BitMatrix.vstack([m, BitMatrix.from_rows([BitVector.from_support(10, [j])])])) > rank(m)
        )
        assert outside not in space


def test_gf2_kron_layout():
    left = BitMatrix.from_bits([[1, 1]])
    right = BitMatrix.from_bits([[1, 0], [0, 1]])
    assert kron(left, right).to_bits().tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]


def test_gf2_inverse():
    m = BitMatrix.from_bits([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert m @ inverse(m) == BitMatrix.identity(3)
    with pytest.raises(RankDeficiencyError):
        inverse(BitMatrix.from_bits([[1, 1], [1, 1]]))


def test_gf2_sparse_dense_agree(rng):
    dense = BitMatrix.random(6, 20, rng)
    sparse = SparseBitMatrix.from_dense(dense)
    assert sparse.to_dense() == dense
    v = BitVector.random(20, rng)
    assert sparse @ v == dense @ v
    assert list(sparse.column_weights()) == list(dense.column_weights())


def test_gf2_sparse_rejects_out_of_range_column():
    with pytest.raises(ValueError):
        SparseBitMatrix(1, 3, [[0, 3]])


def test_gf2_sparse_file_roundtrip(tmp_path):
    m = SparseBitMatrix(3, 5, [[0, 4], [], [1, 2, 3]])
    write_sparse(tmp_path / 'm.txt', m)
    assert (tmp_path / 'm.txt').read_text().splitlines()[0] == '3 5 5'
    back = read_sparse(tmp_path / 'm.txt')
    assert back == m
