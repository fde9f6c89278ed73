import itertools
import math

import numpy as np
import pytest

from quantum_tanner.codes.linear_code import (
    EXHAUSTIVE_DIMENSION_CAP,
    LinearCode,
    encode,
    full_code,
    min_distance,
    parity_check_code,
    puncture,
    random_code,
    repetition_code,
    tensor_code,
    zero_code,
)
from quantum_tanner.gf2.bit_matrix import BitMatrix
from quantum_tanner.utils.errors import CapExceededError


def _brute_distance(gen_bits):
    k, n = gen_bits.shape
    best = math.inf
    for message in itertools.product((0, 1), repeat=k):
        if any(message):
            word = (np.array(message) @ gen_bits) % 2
            best = min(best, int(word.sum()))
    return best


@pytest.mark.parametrize('code, length, dimension, distance', [
    (repetition_code(3), 3, 1, 3),
    (parity_check_code(3), 3, 2, 2),
    (repetition_code(5), 5, 1, 5),
    (parity_check_code(4), 4, 3, 2),
    (full_code(4), 4, 4, 1),
])
def test_linear_code_parameters(code, length, dimension, distance):
    assert code.length == length
    assert code.dimension == dimension
    assert code.min_dist == distance
    assert (code.gen @ code.par.T).is_zero()


def test_linear_code_zero_code_has_infinite_distance():
    assert zero_code(3).min_dist == math.inf


def test_linear_code_dual_of_repetition_is_parity():
    assert repetition_code(3).dual() == parity_check_code(3)
    assert parity_check_code(4).dual() == repetition_code(4)


def test_linear_code_from_dependent_generators():
    code = LinearCode.from_generator([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert code.dimension == 2
    assert code == parity_check_code(3)


def test_linear_code_rejects_inconsistent_matrices():
    with pytest.raises(ValueError):
        LinearCode(BitMatrix.from_bits([[1, 1, 1]]), BitMatrix.from_bits([[1, 0, 0], [0, 1, 0]]))


def test_linear_code_min_distance_matches_brute_force(rng):
    for _ in range(30):
        n = int(rng.integers(3, 9))
        k = int(rng.integers(1, n))
        code = random_code(n, k, rng)
        assert code.dimension == k
        assert min_distance(code) == _brute_distance(code.gen.to_bits())


def test_linear_code_contains_and_encode():
    code = parity_check_code(4)
    word = encode(code, [1, 0, 1])
    assert code.contains(word)
    assert not code.syndrome(word)


def test_linear_code_file_roundtrip(tmp_path, rng):
    code = random_code(6, 3, rng)
    code.write(tmp_path / 'code.txt')
    assert LinearCode.read(tmp_path / 'code.txt') == code


def test_linear_code_read_rejects_bad_header(tmp_path):
    (tmp_path / 'bad.txt').write_text('three by three\n111\n')
    with pytest.raises(ValueError):
        LinearCode.read(tmp_path / 'bad.txt')


def test_linear_code_tensor_distance():
    code = tensor_code(repetition_code(3), parity_check_code(3))
    assert code.length == 9
    assert code.dimension == 2
    assert code.min_dist == 6


def test_linear_code_puncture():
    punctured = puncture(repetition_code(4), [0, 2])
    assert punctured == repetition_code(2)
    assert puncture(zero_code(4), [1, 2]).dimension == 0


def test_linear_code_exhaustive_cap():
    n = EXHAUSTIVE_DIMENSION_CAP + 2
    code = full_code(n)
    with pytest.raises(CapExceededError):
        code.codewords()
    with pytest.raises(CapExceededError):
        min_distance(code)


def test_linear_code_sampled_distance_is_upper_bound(rng):
    code = full_code(EXHAUSTIVE_DIMENSION_CAP + 1)
    assert min_distance(code, sampled=True, rng=rng, n_samples=10) == 1
